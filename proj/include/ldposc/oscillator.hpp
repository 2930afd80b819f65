#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ldposc/rng.hpp"
#include "ldposc/types.hpp"

namespace ldposc {

/// Law of T*A_T = int_0^T X_t dt:
///   mean     = x0 sin T + y0 (1 - cos T)
///   variance = alpha^2 (3T/2 - 2 sin T + sin(2T)/4)
/// Throws DomainError for T <= 0.
GaussianLaw mean_position_law(const OscillatorParams& params, double T);

/// Law of X_T:  mean = x0 cos T + y0 sin T,  variance = alpha^2 (T/2 - sin(2T)/4).
GaussianLaw terminal_position_law(const OscillatorParams& params, double T);

/// Rate function of the continuous observable: y^2/(3 alpha^2) for the mean
/// position, y^2/alpha^2 for the mean velocity.
RateFunction continuous_rate(Observable observable, const OscillatorParams& params);

/// Rotation R(t) = [[cos t, sin t], [-sin t, cos t]], the drift flow over t.
Matrix2 rotation(double t) noexcept;

/// One exact step of the oscillator noise: over [0, d] with u = d - s,
///   dw = int dW,  i1 = int sin(u) dW,  i2 = int cos(u) dW.
struct StepNoise {
    double dw = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
};

/// Samples the Gaussian triple (dW, I1, I2) of one exact step of size delta.
///
/// The 3x3 covariance (Ito isometry)
///   Var dW = d,            Cov(I1, dW) = 1 - cos d,   Cov(I2, dW) = sin d,
///   Var I1 = d/2 - sin(2d)/4,  Var I2 = d/2 + sin(2d)/4,  Cov(I1, I2) = sin^2(d)/2
/// is factored once by Cholesky. Its Schur complements shrink like d^3 and d^5,
/// so for small d they come from cancellation-free power series.
class ExactStepSampler {
public:
    /// Throws DomainError unless delta >= kMinStep.
    explicit ExactStepSampler(double delta);

    static constexpr double kMinStep = 1e-8;

    double step() const noexcept { return delta_; }

    /// Lower-triangular factor L with L L^T = covariance(), row-major.
    const std::array<double, 9>& factor() const noexcept { return factor_; }

    /// Analytic covariance of (dW, I1, I2), row-major.
    std::array<double, 9> covariance() const noexcept;

    /// Consumes three normal draws from `stream`.
    StepNoise sample(rng::Stream& stream) const noexcept;

    /// Maps three standard normals to the correlated triple.
    StepNoise transform(double z0, double z1, double z2) const noexcept;

private:
    double delta_;
    std::array<double, 9> factor_{};
};

/// Exact solution on the grid t_k = k*delta, k = 0..steps, together with the
/// Brownian increments dw[k] = W(t_{k+1}) - W(t_k) that drove it.
struct ExactPath {
    double delta = 0.0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> dw;
};

/// Samples the exact path: (X, Y) <- R(delta) (X, Y) + alpha (I1, I2) per step.
ExactPath sample_exact_path(const OscillatorParams& params, double delta, std::size_t steps,
                            std::uint64_t seed);

ExactPath sample_exact_path(const OscillatorParams& params, const ExactStepSampler& sampler,
                            std::size_t steps, rng::Stream& stream);

}  // namespace ldposc
