#include "ldposc/oscillator.hpp"

#include <cmath>
#include <string>

#include "ldposc/error.hpp"

namespace ldposc {

namespace {

void require_positive_time(double T, const char* what) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw DomainError(std::string(what) + ": time horizon must be positive and finite");
    }
}

// Taylor coefficients in d^2 of the Cholesky Schur complements of the step
// covariance, obtained by symbolic expansion:
//   p2  / d^3 = Var I1 - Cov(I1,dW)^2/d, scaled
//   n   / d^4 = Cov(I1,I2) - Cov(I1,dW) Cov(I2,dW)/d, scaled
//   det / d^9 = determinant of the 3x3 covariance, scaled
constexpr long double kP2Series[] = {
    1.0L / 12.0L,
    -1.0L / 40.0L,
    13.0L / 4032.0L,
    -11.0L / 51840.0L,
    683.0L / 79833600.0L,
    -19.0L / 80870400.0L,
    3781.0L / 804722688000.0L,
    -76459.0L / 1067062284288000.0L,
    61681.0L / 71555941416960000.0L,
};
constexpr long double kCrossSeries[] = {
    -1.0L / 24.0L,
    7.0L / 720.0L,
    -107.0L / 120960.0L,
    163.0L / 3628800.0L,
    -709.0L / 479001600.0L,
    15019.0L / 435891456000.0L,
    -1139.0L / 1902071808000.0L,
    51739.0L / 6402373705728000.0L,
    -495161.0L / 5676771352412160000.0L,
};
constexpr long double kDetSeries[] = {
    1.0L / 8640.0L,
    -1.0L / 100800.0L,
    1.0L / 2419200.0L,
    -23.0L / 2095632000.0L,
    241.0L / 1162377216000.0L,
    -31.0L / 10461394944000.0L,
    14947.0L / 448166159400960000.0L,
    -1583.0L / 5203707073044480000.0L,
    5741.0L / 2497779395061350400000.0L,
};

// Below this step the closed forms lose too many digits to cancellation.
constexpr double kSeriesThreshold = 0.25;

template <std::size_t K>
long double even_series(const long double (&coef)[K], long double d) {
    const long double d2 = d * d;
    long double acc = coef[K - 1];
    for (std::size_t k = K - 1; k-- > 0;) acc = acc * d2 + coef[k];
    return acc;
}

}  // namespace

GaussianLaw mean_position_law(const OscillatorParams& params, double T) {
    require_positive_time(T, "mean_position_law");
    const double a2 = params.alpha * params.alpha;
    return {params.x0 * std::sin(T) + params.y0 * (1.0 - std::cos(T)),
            a2 * (1.5 * T - 2.0 * std::sin(T) + 0.25 * std::sin(2.0 * T))};
}

GaussianLaw terminal_position_law(const OscillatorParams& params, double T) {
    require_positive_time(T, "terminal_position_law");
    const double a2 = params.alpha * params.alpha;
    return {params.x0 * std::cos(T) + params.y0 * std::sin(T),
            a2 * (0.5 * T - 0.25 * std::sin(2.0 * T))};
}

RateFunction continuous_rate(Observable observable, const OscillatorParams& params) {
    if (!(params.alpha > 0.0)) throw DomainError("continuous_rate: alpha must be positive");
    const double a2 = params.alpha * params.alpha;
    switch (observable) {
        case Observable::MeanPosition:
            return RateFunction::quadratic(1.0 / (3.0 * a2));
        case Observable::MeanVelocity:
            return RateFunction::quadratic(1.0 / a2);
    }
    throw DomainError("continuous_rate: unknown observable");
}

Matrix2 rotation(double t) noexcept {
    const double c = std::cos(t);
    const double s = std::sin(t);
    return {c, s, -s, c};
}

ExactStepSampler::ExactStepSampler(double delta) : delta_(delta) {
    if (!(delta >= kMinStep) || !std::isfinite(delta)) {
        throw DomainError("exact step size must be >= 1e-8 and finite");
    }
    const long double d = delta;
    const long double root = std::sqrt(d);
    const long double half_sin = std::sin(d / 2.0L);
    const long double v01 = 2.0L * half_sin * half_sin;  // 1 - cos d
    const long double v02 = std::sin(d);
    const long double v22 = d / 2.0L + std::sin(2.0L * d) / 4.0L;

    long double p2;
    long double cross;
    long double p3;
    if (delta < kSeriesThreshold) {
        const long double d3 = d * d * d;
        p2 = d3 * even_series(kP2Series, d);
        cross = d3 * d * even_series(kCrossSeries, d);
        const long double det = d3 * d3 * d3 * even_series(kDetSeries, d);
        p3 = det / (d * p2);
    } else {
        const long double v11 = d / 2.0L - std::sin(2.0L * d) / 4.0L;
        const long double v12 = v02 * v02 / 2.0L;
        p2 = v11 - v01 * v01 / d;
        cross = v12 - v01 * v02 / d;
        p3 = v22 - v02 * v02 / d - cross * cross / p2;
    }
    if (!(p2 > 0.0L) || !(p3 > 0.0L)) {
        throw InvariantViolation("exact step covariance is not positive definite");
    }
    const long double l11 = std::sqrt(p2);
    factor_ = {static_cast<double>(root),
               0.0,
               0.0,
               static_cast<double>(v01 / root),
               static_cast<double>(l11),
               0.0,
               static_cast<double>(v02 / root),
               static_cast<double>(cross / l11),
               static_cast<double>(std::sqrt(p3))};
}

std::array<double, 9> ExactStepSampler::covariance() const noexcept {
    const double d = delta_;
    const double s = std::sin(d);
    const double v01 = 1.0 - std::cos(d);
    const double v11 = d / 2.0 - std::sin(2.0 * d) / 4.0;
    const double v12 = s * s / 2.0;
    const double v22 = d / 2.0 + std::sin(2.0 * d) / 4.0;
    return {d, v01, s, v01, v11, v12, s, v12, v22};
}

StepNoise ExactStepSampler::transform(double z0, double z1, double z2) const noexcept {
    const auto& L = factor_;
    return {L[0] * z0, L[3] * z0 + L[4] * z1, L[6] * z0 + L[7] * z1 + L[8] * z2};
}

StepNoise ExactStepSampler::sample(rng::Stream& stream) const noexcept {
    const double z0 = stream.next_normal();
    const double z1 = stream.next_normal();
    const double z2 = stream.next_normal();
    return transform(z0, z1, z2);
}

ExactPath sample_exact_path(const OscillatorParams& params, const ExactStepSampler& sampler,
                            std::size_t steps, rng::Stream& stream) {
    ExactPath path;
    path.delta = sampler.step();
    path.x.reserve(steps + 1);
    path.y.reserve(steps + 1);
    path.dw.reserve(steps);
    const Matrix2 R = rotation(sampler.step());
    Vector2 z{params.x0, params.y0};
    path.x.push_back(z.x);
    path.y.push_back(z.y);
    for (std::size_t k = 0; k < steps; ++k) {
        const StepNoise noise = sampler.sample(stream);
        z = R * z;
        z.x += params.alpha * noise.i1;
        z.y += params.alpha * noise.i2;
        path.x.push_back(z.x);
        path.y.push_back(z.y);
        path.dw.push_back(noise.dw);
    }
    return path;
}

ExactPath sample_exact_path(const OscillatorParams& params, double delta, std::size_t steps,
                            std::uint64_t seed) {
    const ExactStepSampler sampler(delta);
    rng::Stream stream(rng::derive_key(seed, 0));
    return sample_exact_path(params, sampler, steps, stream);
}

}  // namespace ldposc
