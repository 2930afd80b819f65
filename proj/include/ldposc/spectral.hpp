#pragma once

#include "ldposc/method.hpp"

namespace ldposc {

/// Eigen-structure of A under 4 det A - tr(A)^2 > 0: the eigenvalues are
/// sqrt(det A) e^{+-i theta} with theta in (0, pi).
struct SpectralData {
    double det = 1.0;
    double trace = 0.0;
    double theta = 0.0;
    double sin_theta = 0.0;
    double cos_theta = 0.0;
    double sqrt_det = 1.0;
    /// 1 - 2 sqrt(det) cos(theta) + det = 1 - tr A + det A.
    double one_minus_trace_plus_det = 0.0;
    /// |det A - 1| <= kSymplecticTolerance; switches to the det = 1 closed forms.
    bool symplectic = false;
};

/// Smallest |sin theta| accepted before the closed forms are refused.
inline constexpr double kMinSinTheta = 1e-8;

/// Throws ConditionError("(A1)", "complex-pair condition failed") when
/// 4 det - tr^2 <= 0 and ConditionError("spectrum", "near-degenerate spectrum")
/// when |sin theta| < kMinSinTheta.
SpectralData spectral_data(const Coefficients& coefficients);
SpectralData spectral_data(const Matrix2& a);

/// sum_{n=1}^{N} sin(n theta) a^n in closed form; N >= 1, theta in (0, pi).
double geom_sin_sum(double theta, double a, long long N);

/// alpha_n = det^{n/2} sin((n+1) theta) / sin theta, n >= -1.
double alpha_hat(long long n, const SpectralData& sd);

/// beta_n = -det * alpha_{n-1}, n >= 0.
double beta_hat(long long n, const SpectralData& sd);

/// S^alpha_N = sum_{n=0}^{N-2} alpha_n; 0 for N < 2.
double s_alpha(long long N, const SpectralData& sd);

/// S^beta_N = sum_{n=0}^{N-2} beta_n = -det * S^alpha_{N-1}; 0 for N < 2.
double s_beta(long long N, const SpectralData& sd);

/// The noise couplings of the method: p = b1, q = a12 b2 - a22 b1 and
/// their sum p + q = a12 b2 - (a22 - 1) b1 taken without cancellation.
struct NoiseCoupling {
    double p = 0.0;
    double q = 0.0;
    double sum = 0.0;

    static NoiseCoupling from(const Coefficients& coefficients) noexcept;
    static NoiseCoupling from(double b1, double q) noexcept { return {b1, q, b1 + q}; }
};

/// Weight of dW_j in N A_N:  c_j = p alpha_{N-2-j} + (p + q) S^alpha_{N-1-j},
/// 0 <= j <= N-2; DomainError otherwise.
double weight_c(long long j, long long N, const SpectralData& sd, const NoiseCoupling& nc);

/// Same weight from the det = 1 cosine form
///   [(p+q) cos(theta/2) - p cos((N-1/2-j) theta) - q cos((N-3/2-j) theta)]
///     / (2 sin theta sin(theta/2)).
double weight_c_rotation(long long j, long long N, const SpectralData& sd, const NoiseCoupling& nc);

/// Same weight with S^alpha written out term by term in sines (cross-check).
double weight_c_expanded(long long j, long long N, const SpectralData& sd, const NoiseCoupling& nc);

/// O(N) reference summations; production code uses them only when built
/// with LDPOSC_NAIVE_SUMS.
namespace naive {
double geom_sin_sum(double theta, double a, long long N);
double s_alpha(long long N, const SpectralData& sd);
}  // namespace naive

}  // namespace ldposc
