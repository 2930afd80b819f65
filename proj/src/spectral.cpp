#include "ldposc/spectral.hpp"

#include <cmath>
#include <string>

#include "ldposc/error.hpp"

namespace ldposc {

namespace {

double power(double base, long long exponent) {
    return std::pow(base, static_cast<double>(exponent));
}

void require_window(long long j, long long N) {
    if (N < 2 || j < 0 || j > N - 2) {
        throw DomainError("weight index j=" + std::to_string(j) + " outside 0..N-2 for N=" +
                          std::to_string(N));
    }
}

}  // namespace

SpectralData spectral_data(const Coefficients& c) {
    const double disc = c.discriminant();
    if (!(disc > 0.0)) {
        throw ConditionError("(A1)", "complex-pair condition failed: 4det(A) - tr(A)^2 = " +
                                         std::to_string(disc));
    }
    SpectralData sd;
    sd.det = c.det();
    sd.trace = c.trace();
    sd.sqrt_det = std::sqrt(sd.det);
    sd.sin_theta = std::sqrt(disc) / (2.0 * sd.sqrt_det);
    sd.cos_theta = sd.trace / (2.0 * sd.sqrt_det);
    sd.theta = std::atan2(sd.sin_theta, sd.cos_theta);
    sd.one_minus_trace_plus_det = c.one_minus_trace_plus_det();
    sd.symplectic = std::abs(c.det_minus_one()) <= kSymplecticTolerance;
    if (sd.sin_theta < kMinSinTheta) {
        throw ConditionError("spectrum", "near-degenerate spectrum: |sin(theta)| < 1e-8");
    }
    return sd;
}

SpectralData spectral_data(const Matrix2& a) {
    return spectral_data(Coefficients::from_matrix(a, {0.0, 1.0}));
}

double geom_sin_sum(double theta, double a, long long N) {
#ifdef LDPOSC_NAIVE_SUMS
    return naive::geom_sin_sum(theta, a, N);
#else
    if (N < 1) throw DomainError("geom_sin_sum needs N >= 1");
    if (a == 1.0) {
        const double half = theta / 2.0;
        return (std::cos(half) - std::cos((static_cast<double>(N) + 0.5) * theta)) /
               (2.0 * std::sin(half));
    }
    const double s = std::sin(theta);
    const double gap = a - std::cos(theta);
    // 1 - 2a cos(theta) + a^2 = (a - cos theta)^2 + sin^2 theta > 0 on (0, pi).
    const double denom = gap * gap + s * s;
    if (!(denom > 0.0)) throw InvariantViolation("geom_sin_sum: vanishing denominator");
    const double n = static_cast<double>(N);
    const double numer = a * s - power(a, N + 1) * std::sin((n + 1.0) * theta) +
                         power(a, N + 2) * std::sin(n * theta);
    return numer / denom;
#endif
}

double alpha_hat(long long n, const SpectralData& sd) {
    if (n < -1) throw DomainError("alpha_hat needs n >= -1");
    if (n == -1) return 0.0;
    if (n == 0) return 1.0;
    const double scale = sd.symplectic ? 1.0 : power(sd.sqrt_det, n);
    return scale * std::sin(static_cast<double>(n + 1) * sd.theta) / sd.sin_theta;
}

double beta_hat(long long n, const SpectralData& sd) {
    if (n < 0) throw DomainError("beta_hat needs n >= 0");
    return -sd.det * alpha_hat(n - 1, sd);
}

double s_alpha(long long N, const SpectralData& sd) {
#ifdef LDPOSC_NAIVE_SUMS
    return naive::s_alpha(N, sd);
#else
    if (N < 2) return 0.0;
    const double n = static_cast<double>(N);
    if (sd.symplectic) {
        const double half = sd.theta / 2.0;
        return (std::cos(half) - std::cos((n - 0.5) * sd.theta)) /
               (2.0 * sd.sin_theta * std::sin(half));
    }
    const double numer = sd.sin_theta - power(sd.sqrt_det, N - 1) * std::sin(n * sd.theta) +
                         power(sd.sqrt_det, N) * std::sin((n - 1.0) * sd.theta);
    return numer / (sd.sin_theta * sd.one_minus_trace_plus_det);
#endif
}

double s_beta(long long N, const SpectralData& sd) {
    if (N < 2) return 0.0;
    return -sd.det * s_alpha(N - 1, sd);
}

NoiseCoupling NoiseCoupling::from(const Coefficients& c) noexcept {
    return {c.b.x, c.coupling(), c.drift_coupling()};
}

double weight_c(long long j, long long N, const SpectralData& sd, const NoiseCoupling& nc) {
    require_window(j, N);
    return nc.p * alpha_hat(N - 2 - j, sd) + nc.sum * s_alpha(N - 1 - j, sd);
}

double weight_c_rotation(long long j, long long N, const SpectralData& sd, const NoiseCoupling& nc) {
    require_window(j, N);
    if (!sd.symplectic) throw ConditionError("(A2)", "cosine weight form needs det(A) = 1");
    const double n = static_cast<double>(N - j);
    const double half = sd.theta / 2.0;
    return (nc.sum * std::cos(half) - nc.p * std::cos((n - 0.5) * sd.theta) -
            nc.q * std::cos((n - 1.5) * sd.theta)) /
           (2.0 * sd.sin_theta * std::sin(half));
}

double weight_c_expanded(long long j, long long N, const SpectralData& sd, const NoiseCoupling& nc) {
    require_window(j, N);
    const long long m = N - 2 - j;
    const double r = sd.sqrt_det;
    const double first = nc.p / sd.sin_theta * std::sin(static_cast<double>(m + 1) * sd.theta) *
                         power(r, m);
    const double bracket = sd.sin_theta -
                           power(r, m) * std::sin(static_cast<double>(m + 1) * sd.theta) +
                           power(r, m + 1) * std::sin(static_cast<double>(m) * sd.theta);
    return first + nc.sum / sd.sin_theta * bracket / sd.one_minus_trace_plus_det;
}

namespace naive {

double geom_sin_sum(double theta, double a, long long N) {
    if (N < 1) throw DomainError("geom_sin_sum needs N >= 1");
    double sum = 0.0;
    double an = 1.0;
    for (long long n = 1; n <= N; ++n) {
        an *= a;
        sum += std::sin(static_cast<double>(n) * theta) * an;
    }
    return sum;
}

double s_alpha(long long N, const SpectralData& sd) {
    double sum = 0.0;
    for (long long n = 0; n <= N - 2; ++n) sum += alpha_hat(n, sd);
    return sum;
}

}  // namespace naive

}  // namespace ldposc
