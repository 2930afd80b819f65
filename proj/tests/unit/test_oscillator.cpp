#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ldposc/error.hpp"
#include "ldposc/oscillator.hpp"
#include "oracles.hpp"

using namespace ldposc;
using std::numbers::pi;

TEST_CASE("law of T*A_T matches quadrature of the solution kernel") {
    // T A_T = int_0^T X dt with X_t = x0 cos t + y0 sin t + alpha int_0^t sin(t-s) dW_s,
    // so T A_T - mean = alpha int_0^T (1 - cos(T-s)) dW_s.
    const OscillatorParams params{1.7, 0.4, -1.3};
    for (double T : {0.3, 1.0, 2.0 * pi, 17.5}) {
        const GaussianLaw law = mean_position_law(params, T);
        const double mean = oracle::integrate(
            [&](double t) { return params.x0 * std::cos(t) + params.y0 * std::sin(t); }, 0.0, T);
        const double var = params.alpha * params.alpha *
                           oracle::integrate(
                               [&](double s) {
                                   const double k = 1.0 - std::cos(T - s);
                                   return k * k;
                               },
                               0.0, T);
        CHECK(std::abs(law.mean - mean) < 1e-12 * std::max(1.0, std::abs(mean)));
        CHECK(oracle::rel_err(law.variance, var) < 1e-12);
    }
}

TEST_CASE("terminal position law matches quadrature") {
    const OscillatorParams params{0.8, 2.0, 0.5};
    for (double T : {0.5, 3.0, 40.0}) {
        const GaussianLaw law = terminal_position_law(params, T);
        const double var = params.alpha * params.alpha *
                           oracle::integrate([&](double s) { return std::pow(std::sin(T - s), 2); },
                                             0.0, T);
        CHECK(law.mean == doctest::Approx(params.x0 * std::cos(T) + params.y0 * std::sin(T)));
        CHECK(oracle::rel_err(law.variance, var) < 1e-11);
    }
}

TEST_CASE("mean position variance at a full period and long-time slope") {
    const OscillatorParams params{1.0, 0.0, 0.0};
    CHECK(oracle::rel_err(mean_position_law(params, 2.0 * pi).variance, 3.0 * pi) < 1e-12);
    const double T = 1e5;
    CHECK(std::abs(mean_position_law(params, T).variance / T - 1.5) < 1e-4);
    CHECK_THROWS_AS(mean_position_law(params, 0.0), DomainError);
    CHECK_THROWS_AS(terminal_position_law(params, -1.0), DomainError);
}

TEST_CASE("continuous rates") {
    const OscillatorParams params{2.0, 0.0, 0.0};
    CHECK(continuous_rate(Observable::MeanPosition, params)(1.0) == doctest::Approx(1.0 / 12.0));
    CHECK(continuous_rate(Observable::MeanVelocity, params)(1.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(continuous_rate(Observable::MeanPosition, OscillatorParams{0.0, 0, 0}),
                    DomainError);
}

TEST_CASE("exact step covariance factor reproduces the covariance") {
    for (double d : {1e-8, 1e-5, 1e-3, 0.05, 0.2, 0.2499, 0.25, 0.7, 2.0}) {
        const ExactStepSampler sampler(d);
        const auto& L = sampler.factor();
        // Reference covariance from quadrature, independent of the analytic form.
        const auto f = [](int i, double u) {
            return i == 0 ? 1.0 : (i == 1 ? std::sin(u) : std::cos(u));
        };
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j <= i; ++j) {
                double llt = 0.0;
                for (int k = 0; k < 3; ++k) llt += L[3 * i + k] * L[3 * j + k];
                const double ref =
                    oracle::integrate([&](double u) { return f(i, u) * f(j, u); }, 0.0, d);
                CHECK(oracle::rel_err(llt, ref) < 1e-9);
            }
        }
    }
    CHECK_THROWS_AS(ExactStepSampler(1e-9), DomainError);
}

TEST_CASE("exact step sampler empirical covariance") {
    const double d = 0.3;
    const ExactStepSampler sampler(d);
    const auto cov = sampler.covariance();
    rng::Stream stream(rng::derive_key(5, 0));
    const int n = 1000000;
    double acc[9] = {};
    for (int k = 0; k < n; ++k) {
        const StepNoise s = sampler.sample(stream);
        const double v[3] = {s.dw, s.i1, s.i2};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc[3 * i + j] += v[i] * v[j];
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double est = acc[3 * i + j] / n;
            const double sd = std::sqrt((cov[3 * i + i] * cov[3 * j + j] + cov[3 * i + j] * cov[3 * i + j]) / n);
            CHECK(std::abs(est - cov[3 * i + j]) < 5.0 * sd);
        }
    }
}

TEST_CASE("noise-free exact path is a rotation") {
    const OscillatorParams params{0.0, 1.0, 0.5};
    const double d = 0.01;
    const ExactPath path = sample_exact_path(params, d, 1000, 3);
    REQUIRE(path.x.size() == 1001);
    REQUIRE(path.dw.size() == 1000);
    const double T = 1000 * d;
    CHECK(path.x.back() == doctest::Approx(std::cos(T) + 0.5 * std::sin(T)).epsilon(1e-12));
    CHECK(path.y.back() == doctest::Approx(-std::sin(T) + 0.5 * std::cos(T)).epsilon(1e-12));
}

TEST_CASE("exact path terminal variance") {
    const OscillatorParams params{1.0, 0.0, 0.0};
    const int paths = 20000;
    const ExactStepSampler sampler(0.5);
    double sum2 = 0.0;
    for (int k = 0; k < paths; ++k) {
        rng::Stream stream = rng::Stream::for_index(11, k);
        const ExactPath p = sample_exact_path(params, sampler, 10, stream);
        sum2 += p.x.back() * p.x.back();
    }
    const double var = terminal_position_law(params, 5.0).variance;
    CHECK(std::abs(sum2 / paths - var) < 5.0 * var * std::sqrt(2.0 / paths));
}
