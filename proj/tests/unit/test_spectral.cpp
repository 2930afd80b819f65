#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ldposc/catalog.hpp"
#include "ldposc/error.hpp"
#include "ldposc/spectral.hpp"
#include "oracles.hpp"

using namespace ldposc;
using std::numbers::pi;

namespace {

// A matrix with eigenvalues r e^{+-i theta}: r * (cos theta I + sin theta K) conjugated by a shear.
Matrix2 with_spectrum(double r, double theta, double shear) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Matrix2 rot{r * c, r * s, -r * s, r * c};
    const Matrix2 p{1.0, shear, 0.0, 1.0};
    const Matrix2 pinv{1.0, -shear, 0.0, 1.0};
    return p * rot * pinv;
}

// x_{n+1} = A x_n + b dW_n from x_0 = 0 gives sum_{n<N} x_n = sum_j w_j dW_j; the
// first component of w_j is the weight c_j, read off by iterating unit impulses.
double impulse_weight(const Coefficients& c, long long j, long long N) {
    Vector2 z{0.0, 0.0};
    double sum = 0.0;
    for (long long n = 0; n < N; ++n) {
        sum += z.x;
        z = c.a * z;
        if (n == j) {
            z.x += c.b.x;
            z.y += c.b.y;
        }
    }
    return sum;
}

}  // namespace

TEST_CASE("spectral angle") {
    for (double h : {0.1, 1.0, 3.0}) {
        const SpectralData sd = spectral_data(evaluate(find_method("ex"), h));
        CHECK(sd.theta == doctest::Approx(h).epsilon(1e-14));
        CHECK(sd.symplectic);
    }
    CHECK(spectral_data(Matrix2{0.0, 1.0, -1.0, 0.0}).theta == doctest::Approx(pi / 2));
    const Coefficients mid = evaluate(find_method("midpoint"), 0.5);
    const SpectralData sd = spectral_data(mid);
    CHECK(sd.theta == doctest::Approx(oracle::eigen_angle(mid.a)).epsilon(1e-14));
    CHECK(sd.theta == doctest::Approx(0.48995).epsilon(1e-5));
    const SpectralData damped = spectral_data(with_spectrum(0.8, 1.1, 0.7));
    CHECK(damped.theta == doctest::Approx(1.1));
    CHECK(damped.sqrt_det == doctest::Approx(0.8));
    CHECK(!damped.symplectic);
}

TEST_CASE("spectral data rejects real spectra") {
    CHECK_THROWS_AS(spectral_data(Matrix2{2.0, 0.0, 0.0, 0.5}), ConditionError);
    try {
        spectral_data(Matrix2{1.0, 1.0, 0.0, 1.0});
        FAIL("expected ConditionError");
    } catch (const ConditionError& e) {
        CHECK(std::string(e.what()).find("complex-pair condition failed") != std::string::npos);
    }
}

TEST_CASE("geometric sine sums") {
    CHECK(geom_sin_sum(0.4, 0.7, 1) == doctest::Approx(0.7 * std::sin(0.4)));
    CHECK(geom_sin_sum(pi / 3, 1.0, 3) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(std::abs(geom_sin_sum(0.7, 0.9, 25) - oracle::sin_power_sum(0.7, 0.9, 25)) < 1e-12);
}

TEST_CASE("geometric sine sums on random triples") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> th(1e-3, pi - 1e-3);
    std::uniform_real_distribution<double> av(-1.0, 1.0);
    std::uniform_int_distribution<long long> nv(1, 1000);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double theta = th(gen);
        const double a = (k % 10 == 0) ? 1.0 : av(gen);
        const long long N = nv(gen);
        worst = std::max(worst, std::abs(geom_sin_sum(theta, a, N) - oracle::sin_power_sum(theta, a, N)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("alpha sequence satisfies the companion recurrence") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> rv(0.5, 1.0);
    std::uniform_real_distribution<double> th(0.05, pi - 0.05);
    for (int trial = 0; trial < 20; ++trial) {
        const double r = trial % 2 ? 1.0 : rv(gen);
        const Matrix2 a = with_spectrum(r, th(gen), 0.3);
        const SpectralData sd = spectral_data(a);
        CHECK(alpha_hat(-1, sd) == 0.0);
        CHECK(alpha_hat(0, sd) == doctest::Approx(1.0));
        const auto seq = oracle::alpha_sequence(a.trace(), a.det(), 101);
        for (long long n = 0; n <= 100; ++n) {
            const double expected = seq[static_cast<std::size_t>(n)];
            CHECK(std::abs(alpha_hat(n, sd) - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
        }
        for (long long n = 0; n < 20; ++n) {
            CHECK(beta_hat(n, sd) == doctest::Approx(-a.det() * alpha_hat(n - 1, sd)));
        }
    }
}

TEST_CASE("alpha coefficients reproduce matrix powers") {
    // A^n = alpha_{n-1} A + beta_{n-1} I by Cayley-Hamilton.
    const Matrix2 a = with_spectrum(0.9, 0.8, -0.4);
    const SpectralData sd = spectral_data(a);
    for (long long n = 1; n < 40; ++n) {
        const Matrix2 an = oracle::power(a, n);
        const double al = alpha_hat(n - 1, sd);
        const double be = beta_hat(n - 1, sd);
        CHECK(an.a11 == doctest::Approx(al * a.a11 + be).epsilon(1e-11));
        CHECK(an.a12 == doctest::Approx(al * a.a12).epsilon(1e-11));
        CHECK(an.a22 == doctest::Approx(al * a.a22 + be).epsilon(1e-11));
    }
}

TEST_CASE("partial sums of alpha") {
    const SpectralData sym = spectral_data(with_spectrum(1.0, 1.0, 0.2));
    CHECK(s_alpha(2, sym) == doctest::Approx(1.0));
    CHECK(s_alpha(1, sym) == 0.0);
    CHECK(s_alpha(10, sym) == doctest::Approx(naive::s_alpha(10, sym)).epsilon(1e-12));

    const SpectralData damp = spectral_data(with_spectrum(std::sqrt(0.8), 0.6, 0.2));
    double direct = 0.0;
    for (long long n = 0; n <= 48; ++n) direct += alpha_hat(n, damp);
    CHECK(std::abs(s_alpha(50, damp) - direct) < 1e-10);
    for (long long N : {2LL, 3LL, 17LL, 200LL}) {
        CHECK(s_beta(N, damp) == doctest::Approx(-damp.det * s_alpha(N - 1, damp)));
        double bsum = 0.0;
        for (long long n = 0; n <= N - 2; ++n) bsum += beta_hat(n, damp);
        CHECK(std::abs(s_beta(N, damp) - bsum) < 1e-10);
    }
}

TEST_CASE("weights agree across their three forms") {
    const Coefficients mid = evaluate(find_method("midpoint"), 0.5);
    const SpectralData sd = spectral_data(mid);
    const NoiseCoupling nc = NoiseCoupling::from(mid);
    CHECK(std::abs(weight_c(5, 20, sd, nc) - weight_c_rotation(5, 20, sd, nc)) < 1e-12);
    for (long long j = 0; j <= 18; ++j) {
        CHECK(std::abs(weight_c(j, 20, sd, nc) - weight_c_expanded(j, 20, sd, nc)) < 1e-12);
        CHECK(weight_c(j, 20, sd, nc) == doctest::Approx(impulse_weight(mid, j, 20)).epsilon(1e-12));
    }
    CHECK(weight_c(18, 20, sd, nc) == doctest::Approx(mid.b.x));
    CHECK_THROWS_AS(weight_c(19, 20, sd, nc), DomainError);
    CHECK_THROWS_AS(weight_c(-1, 20, sd, nc), DomainError);
    CHECK(weight_c(3, 20, sd, NoiseCoupling::from(0.0, 0.0)) == 0.0);

    const Coefficients th = evaluate(theta_method(1.0), 0.3);
    const SpectralData tsd = spectral_data(th);
    const NoiseCoupling tnc = NoiseCoupling::from(th);
    CHECK_THROWS(weight_c_rotation(3, 20, tsd, tnc));
    for (long long j = 0; j <= 28; ++j) {
        CHECK(weight_c(j, 30, tsd, tnc) == doctest::Approx(impulse_weight(th, j, 30)).epsilon(1e-12));
    }
}

TEST_CASE("coupling sum is cancellation free") {
    const Coefficients c = evaluate(find_method("ex"), 1e-6);
    const NoiseCoupling nc = NoiseCoupling::from(c);
    CHECK(nc.p == 0.0);
    CHECK(nc.q == doctest::Approx(std::sin(1e-6)));
    CHECK(nc.sum == doctest::Approx(std::sin(1e-6)));
}
