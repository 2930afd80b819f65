#pragma once

#include <array>

#include "ldposc/method.hpp"
#include "ldposc/spectral.hpp"
#include "ldposc/types.hpp"

namespace ldposc {

/// Law of N A_N = sum_{n=0}^{N-1} x_n from the closed forms
///   mean     = (1 + a11 S^alpha_N + S^beta_N) x0 + a12 S^alpha_N y0
///   variance = alpha^2 h sum_{j=0}^{N-2} c_j^2.
/// Needs N >= 2 and 4 det A - tr(A)^2 > 0 (ConditionError otherwise).
GaussianLaw law_NA_N(const Coefficients& coefficients, double h, long long N,
                     const OscillatorParams& params);
GaussianLaw law_NA_N(const MethodDef& method, double h, long long N, const OscillatorParams& params);

/// Law of x_N:
///   mean     = (a11 alpha_{N-1} + beta_{N-1}) x0 + a12 alpha_{N-1} y0
///   variance = alpha^2 h sum_{m=0}^{N-1} (p alpha_m + q alpha_{m-1})^2,
/// summed in closed form (linear in N) when det A = 1. Needs N >= 1.
GaussianLaw law_x_N(const Coefficients& coefficients, double h, long long N,
                    const OscillatorParams& params);
GaussianLaw law_x_N(const MethodDef& method, double h, long long N, const OscillatorParams& params);

/// Law of the mean position A_N = (N A_N) / N.
GaussianLaw law_A_N(const MethodDef& method, double h, long long N, const OscillatorParams& params);

/// Law of the mean velocity B_N = x_N / (N h).
GaussianLaw law_B_N(const MethodDef& method, double h, long long N, const OscillatorParams& params);

/// Law of c X for X ~ law.
GaussianLaw scale(const GaussianLaw& law, double c) noexcept;

/// Moments of z_N = (x_N, y_N, s_N) with s_N = sum_{k=0}^{N-1} x_k, so s_N = N A_N.
struct AugmentedMoments {
    std::array<double, 3> mean{};
    std::array<double, 9> covariance{};  ///< row-major, symmetric

    GaussianLaw x() const noexcept { return {mean[0], covariance[0]}; }
    GaussianLaw y() const noexcept { return {mean[1], covariance[4]}; }
    GaussianLaw s() const noexcept { return {mean[2], covariance[8]}; }
};

/// Propagates m <- M m, C <- M C M^T + alpha^2 h g g^T for N steps with
///   M = [[a11, a12, 0], [a21, a22, 0], [1, 0, 1]],  g = (b1, b2, 0),
/// in extended precision. Independent of the closed forms; N >= 1.
AugmentedMoments oracle_moments(const Coefficients& coefficients, double h, long long N,
                                const OscillatorParams& params);
AugmentedMoments oracle_moments(const MethodDef& method, double h, long long N,
                                const OscillatorParams& params);

/// Probabilities below this are reported through the log channel only.
inline constexpr double kLogChannelThreshold = 1e-300;

struct Probability {
    double value = 0.0;  ///< 0 when in the log channel
    double log = 0.0;    ///< natural log of the probability, -inf for an empty event
    bool log_channel = false;
};

/// P(lo <= X <= hi) for X ~ law; lo and hi may be infinite. A zero variance
/// means a point mass at the mean. DomainError unless lo <= hi.
Probability interval_probability(const GaussianLaw& law, double lo, double hi);

/// log P(Z >= z) for a standard normal Z, accurate deep into the tail.
double log_upper_tail(double z);

/// Upper bound (1/sqrt(2 pi)) (sigma/(x-mu)) exp(-(x-mu)^2/(2 sigma^2)) on
/// P(X >= x), X ~ N(mu, sigma^2). DomainError unless x > mu and sigma > 0.
double gaussian_tail_bound(double mu, double sigma, double x);

/// The mirrored bound on P(X <= x) for x < mu.
double gaussian_lower_tail_bound(double mu, double sigma, double x);

}  // namespace ldposc
