#include <doctest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "ldposc/catalog.hpp"
#include "ldposc/error.hpp"
#include "ldposc/gaussian_law.hpp"
#include "oracles.hpp"

using namespace ldposc;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// log P(Z >= z) in 50-digit arithmetic.
double big_log_tail(double z) {
    const Big t = boost::math::erfc(Big(z) / boost::multiprecision::sqrt(Big(2))) / 2;
    return static_cast<double>(boost::multiprecision::log(t));
}

// Plain double-precision iteration of the recursion, without long double or closed forms.
struct Walk {
    double mean_x = 0.0;
    double mean_s = 0.0;
    double var_x = 0.0;
    double var_s = 0.0;
};

Walk walk_moments(const Coefficients& c, double h, long long N, const OscillatorParams& p) {
    // State (x, y, s); covariance kept as 6 unique entries.
    double mx = p.x0, my = p.y0, ms = 0.0;
    double cxx = 0, cxy = 0, cyy = 0, cxs = 0, cys = 0, css = 0;
    const double q = p.alpha * p.alpha * h;
    const auto& a = c.a;
    for (long long n = 0; n < N; ++n) {
        const double nxx = a.a11 * a.a11 * cxx + 2 * a.a11 * a.a12 * cxy + a.a12 * a.a12 * cyy + q * c.b.x * c.b.x;
        const double nxy = a.a11 * a.a21 * cxx + (a.a11 * a.a22 + a.a12 * a.a21) * cxy + a.a12 * a.a22 * cyy + q * c.b.x * c.b.y;
        const double nyy = a.a21 * a.a21 * cxx + 2 * a.a21 * a.a22 * cxy + a.a22 * a.a22 * cyy + q * c.b.y * c.b.y;
        const double nxs = a.a11 * (cxx + cxs) + a.a12 * (cxy + cys);
        const double nys = a.a21 * (cxx + cxs) + a.a22 * (cxy + cys);
        const double nss = css + 2 * cxs + cxx;
        ms += mx;
        const double nmx = a.a11 * mx + a.a12 * my;
        my = a.a21 * mx + a.a22 * my;
        mx = nmx;
        cxx = nxx; cxy = nxy; cyy = nyy; cxs = nxs; cys = nys; css = nss;
    }
    return {mx, ms, cxx, css};
}

std::vector<double> probe_steps(const MethodDef& m) {
    const double hmax = std::min(m.range().hi, 2.0);
    return {0.1, 0.5, 0.9 * hmax};
}

}  // namespace

TEST_CASE("closed-form laws match the augmented recursion for every catalog method") {
    const OscillatorParams params{1.3, 1.0, 0.5};
    double worst = 0.0;
    for (const MethodDef& m : catalog()) {
        for (double h : probe_steps(m)) {
            for (long long N : {2LL, 10LL, 100LL, 1000LL}) {
                const AugmentedMoments ref = oracle_moments(m, h, N, params);
                const GaussianLaw na = law_NA_N(m, h, N, params);
                const GaussianLaw xn = law_x_N(m, h, N, params);
                INFO(m.id(), " h=", h, " N=", N);
                const double e1 = oracle::rel_err(na.mean, ref.s().mean);
                const double e2 = oracle::rel_err(na.variance, ref.s().variance);
                const double e3 = oracle::rel_err(xn.mean, ref.x().mean);
                const double e4 = oracle::rel_err(xn.variance, ref.x().variance);
                CHECK(std::max({e1, e2, e3, e4}) < 1e-9);
                worst = std::max({worst, e1, e2, e3, e4});
            }
        }
    }
    MESSAGE("worst relative error " << worst);
}

TEST_CASE("augmented oracle agrees with a plain double walk") {
    const OscillatorParams params{0.7, -0.4, 1.2};
    for (const MethodDef& m : catalog()) {
        const double h = 0.3;
        const Coefficients c = evaluate(m, h);
        const AugmentedMoments ref = oracle_moments(c, h, 200, params);
        const Walk w = walk_moments(c, h, 200, params);
        CHECK(oracle::rel_err(ref.x().mean, w.mean_x) < 1e-10);
        CHECK(oracle::rel_err(ref.s().mean, w.mean_s) < 1e-10);
        CHECK(oracle::rel_err(ref.x().variance, w.var_x) < 1e-10);
        CHECK(oracle::rel_err(ref.s().variance, w.var_s) < 1e-10);
    }
}

TEST_CASE("Euler-Maruyama law against Monte Carlo") {
    const MethodDef em = find_method("em");
    const double h = 0.05;
    const long long N = 40;
    const OscillatorParams params{1.0, 0.5, 0.0};
    const Coefficients c = evaluate(em, h);
    std::mt19937_64 gen(31337);
    std::normal_distribution<double> normal;
    const int paths = 100000;
    double s1 = 0, s2 = 0;
    for (int k = 0; k < paths; ++k) {
        double x = params.x0, y = params.y0, s = 0.0;
        for (long long n = 0; n < N; ++n) {
            s += x;
            const double dw = std::sqrt(h) * normal(gen);
            const double nx = c.a.a11 * x + c.a.a12 * y + c.b.x * dw;
            y = c.a.a21 * x + c.a.a22 * y + c.b.y * dw;
            x = nx;
        }
        s1 += s;
        s2 += s * s;
    }
    const double mean = s1 / paths;
    const double var = s2 / paths - mean * mean;
    const GaussianLaw law = law_NA_N(em, h, N, params);
    CHECK(std::abs(mean - law.mean) < 5.0 * std::sqrt(law.variance / paths));
    CHECK(std::abs(var - law.variance) < 5.0 * law.variance * std::sqrt(2.0 / paths));
}

TEST_CASE("law preconditions") {
    const MethodDef mid = find_method("midpoint");
    const OscillatorParams params;
    CHECK_THROWS_AS(law_NA_N(mid, 0.1, 1, params), DomainError);
    CHECK_THROWS_AS(law_x_N(mid, 0.1, 0, params), DomainError);
    const Coefficients real = Coefficients::from_matrix({2.0, 0.0, 0.0, 0.5}, {0.0, 1.0});
    CHECK_THROWS_AS(law_NA_N(real, 0.1, 10, params), ConditionError);
    const GaussianLaw a = law_A_N(mid, 0.1, 50, OscillatorParams{1.0, 1.0, 0.0});
    const GaussianLaw na = law_NA_N(mid, 0.1, 50, OscillatorParams{1.0, 1.0, 0.0});
    CHECK(a.mean == doctest::Approx(na.mean / 50));
    CHECK(a.variance == doctest::Approx(na.variance / 2500));
    const GaussianLaw b = law_B_N(mid, 0.1, 50, OscillatorParams{1.0, 1.0, 0.0});
    const GaussianLaw xn = law_x_N(mid, 0.1, 50, OscillatorParams{1.0, 1.0, 0.0});
    CHECK(b.mean == doctest::Approx(xn.mean / 5.0));
    CHECK(b.variance == doctest::Approx(xn.variance / 25.0));
    const GaussianLaw sc = scale({1.0, 4.0}, -3.0);
    CHECK(sc.mean == -3.0);
    CHECK(sc.variance == 36.0);
}

TEST_CASE("log tail far beyond double range") {
    CHECK(log_upper_tail(40.0) == doctest::Approx(big_log_tail(40.0)).epsilon(1e-13));
    CHECK(log_upper_tail(40.0) == doctest::Approx(-804.608).epsilon(1e-6));
    for (double z : {-30.0, -3.0, -0.5, 0.0, 0.5, 2.0, 4.9, 5.0, 5.1, 8.0, 20.0, 100.0, 1000.0}) {
        INFO("z=", z);
        CHECK(log_upper_tail(z) == doctest::Approx(big_log_tail(z)).epsilon(1e-12));
    }
}

TEST_CASE("interval probabilities") {
    const GaussianLaw std_normal{0.0, 1.0};
    const Probability deep = interval_probability(std_normal, 40.0, INFINITY);
    CHECK(deep.log_channel);
    CHECK(deep.value == 0.0);
    CHECK(deep.log == doctest::Approx(big_log_tail(40.0)).epsilon(1e-12));

    const Probability mid = interval_probability(std_normal, -1.0, 1.0);
    CHECK(!mid.log_channel);
    CHECK(mid.value == doctest::Approx(std::erf(1.0 / std::sqrt(2.0))).epsilon(1e-14));

    // Narrow band in the tail: difference of two tails.
    const Probability band = interval_probability({1.0, 0.25}, 5.0, 5.5);
    const double ref = std::exp(big_log_tail(8.0)) - std::exp(big_log_tail(9.0));
    CHECK(band.value == doctest::Approx(ref).epsilon(1e-10));
    const Probability low = interval_probability({1.0, 0.25}, -3.5, -3.0);
    CHECK(low.value == doctest::Approx(ref).epsilon(1e-10));

    CHECK(interval_probability({2.0, 0.0}, 1.0, 3.0).value == 1.0);
    const Probability empty = interval_probability({2.0, 0.0}, 3.0, 4.0);
    CHECK(empty.value == 0.0);
    CHECK(std::isinf(empty.log));
    CHECK(interval_probability(std_normal, -INFINITY, INFINITY).value == doctest::Approx(1.0));
    CHECK_THROWS_AS(interval_probability(std_normal, 1.0, 0.0), DomainError);
}

TEST_CASE("Gaussian tail bounds") {
    for (double x : {0.5, 1.0, 3.0, 10.0}) {
        const double exact = std::exp(big_log_tail(x / 2.0));
        const double bound = gaussian_tail_bound(0.0, 2.0, x);
        CHECK(bound >= exact);
        CHECK(gaussian_lower_tail_bound(0.0, 2.0, -x) == doctest::Approx(bound));
    }
    // The bound is asymptotically tight.
    CHECK(gaussian_tail_bound(0.0, 1.0, 30.0) / std::exp(big_log_tail(30.0)) < 1.002);
    CHECK_THROWS_AS(gaussian_tail_bound(0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(gaussian_tail_bound(0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(gaussian_lower_tail_bound(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("dissipative laws stabilise in N") {
    // For det A < 1, Var x_N and Var(N A_N) - 2 c N settle to constants; check the
    // sup over a late window against the value at its start.
    const OscillatorParams params{1.0, 0.0, 0.0};
    for (const char* id : {"theta:1", "pc-pem-mr", "pc-em-bem"}) {
        const MethodDef m = find_method(id);
        const double h = 0.5;
        const double start = law_x_N(m, h, 2000, params).variance;
        double sup = 0.0;
        for (long long N = 2000; N <= 20000; N += 997) sup = std::max(sup, law_x_N(m, h, N, params).variance);
        INFO(id);
        CHECK(oracle::rel_err(sup, start) < 1e-9);
        const double slope1 = law_NA_N(m, h, 4000, params).variance - law_NA_N(m, h, 3000, params).variance;
        const double slope2 = law_NA_N(m, h, 20000, params).variance - law_NA_N(m, h, 19000, params).variance;
        CHECK(oracle::rel_err(slope2, slope1) < 1e-9);
    }
}
