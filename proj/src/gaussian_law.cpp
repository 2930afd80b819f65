#include "ldposc/gaussian_law.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ldposc/error.hpp"

namespace ldposc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_steps(long long N, long long minimum, const char* what) {
    if (N < minimum) {
        throw DomainError(std::string(what) + ": N must be >= " + std::to_string(minimum));
    }
}

void require_step_size(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("step-size must be positive and finite");
}

// Standard normal upper tail via the Laplace continued fraction
//   Q(z) = phi(z) / (z + 1/(z + 2/(z + 3/(z + ...)))),
// evaluated by the modified Lentz method; used for z >= 5.
double log_upper_tail_cf(double z) {
    constexpr double kTiny = 1e-300;
    double f = z;
    double C = f;
    double D = 0.0;
    for (int k = 1; k < 500; ++k) {
        D = z + k * D;
        if (D == 0.0) D = kTiny;
        C = z + k / C;
        if (C == 0.0) C = kTiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(f);
}

Probability from_log(double log_p) {
    Probability p;
    p.log = log_p;
    const double value = std::exp(log_p);
    if (value < kLogChannelThreshold) {
        p.log_channel = true;
        p.value = 0.0;
    } else {
        p.value = value;
    }
    return p;
}

// log(e^a - e^b) for a >= b.
double log_diff_exp(double a, double b) {
    if (b == -kInf) return a;
    if (a == b) return -kInf;
    return a + std::log1p(-std::exp(b - a));
}

}  // namespace

GaussianLaw law_NA_N(const Coefficients& c, double h, long long N, const OscillatorParams& params) {
    require_steps(N, 2, "law_NA_N");
    require_step_size(h);
    const SpectralData sd = spectral_data(c);
    const NoiseCoupling nc = NoiseCoupling::from(c);
    const double sa = s_alpha(N, sd);
    const double sb = s_beta(N, sd);
    const double mean = (1.0 + c.a.a11 * sa + sb) * params.x0 + c.a.a12 * sa * params.y0;
    double sum = 0.0;
    for (long long j = 0; j <= N - 2; ++j) {
        const double cj = weight_c(j, N, sd, nc);
        sum += cj * cj;
    }
    return {mean, params.alpha * params.alpha * h * sum};
}

GaussianLaw law_NA_N(const MethodDef& method, double h, long long N, const OscillatorParams& params) {
    return law_NA_N(evaluate(method, h), h, N, params);
}

GaussianLaw law_x_N(const Coefficients& c, double h, long long N, const OscillatorParams& params) {
    require_steps(N, 1, "law_x_N");
    require_step_size(h);
    const SpectralData sd = spectral_data(c);
    const NoiseCoupling nc = NoiseCoupling::from(c);
    const double an = alpha_hat(N - 1, sd);
    const double mean = (c.a.a11 * an + beta_hat(N - 1, sd)) * params.x0 + c.a.a12 * an * params.y0;

    double sum = 0.0;
    if (sd.symplectic) {
        const double n = static_cast<double>(N);
        const double t = sd.theta;
        const double s = sd.sin_theta;
        const double s2 = s * s;
        const double squares = ((n - 1.0) / 2.0 - (std::sin((2.0 * n - 1.0) * t) - s) / (4.0 * s)) / s2;
        const double last = std::sin(n * t) / s;
        const double cross =
            ((n - 1.0) * sd.cos_theta - (std::sin(2.0 * n * t) - std::sin(2.0 * t)) / (2.0 * s)) / s2;
        sum = (nc.p * nc.p + nc.q * nc.q) * squares + nc.p * nc.p * last * last + nc.p * nc.q * cross;
    } else {
        double previous = 0.0;  // alpha_{m-1}
        for (long long m = 0; m <= N - 1; ++m) {
            const double current = alpha_hat(m, sd);
            const double w = nc.p * current + nc.q * previous;
            sum += w * w;
            previous = current;
        }
    }
    return {mean, params.alpha * params.alpha * h * sum};
}

GaussianLaw law_x_N(const MethodDef& method, double h, long long N, const OscillatorParams& params) {
    return law_x_N(evaluate(method, h), h, N, params);
}

GaussianLaw scale(const GaussianLaw& law, double c) noexcept {
    return {c * law.mean, c * c * law.variance};
}

GaussianLaw law_A_N(const MethodDef& method, double h, long long N, const OscillatorParams& params) {
    return scale(law_NA_N(method, h, N, params), 1.0 / static_cast<double>(N));
}

GaussianLaw law_B_N(const MethodDef& method, double h, long long N, const OscillatorParams& params) {
    return scale(law_x_N(method, h, N, params), 1.0 / (static_cast<double>(N) * h));
}

AugmentedMoments oracle_moments(const Coefficients& c, double h, long long N,
                                const OscillatorParams& params) {
    require_steps(N, 1, "oracle_moments");
    require_step_size(h);
    using L = long double;
    const L M[3][3] = {{c.a.a11, c.a.a12, 0.0L}, {c.a.a21, c.a.a22, 0.0L}, {1.0L, 0.0L, 1.0L}};
    const L g[3] = {c.b.x, c.b.y, 0.0L};
    const L noise = static_cast<L>(params.alpha) * params.alpha * h;

    L m[3] = {params.x0, params.y0, 0.0L};
    L C[3][3] = {};
    for (long long step = 0; step < N; ++step) {
        L mn[3] = {};
        L MC[3][3] = {};
        L Cn[3][3] = {};
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 3; ++k) mn[i] += M[i][k] * m[k];
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) MC[i][j] += M[i][k] * C[k][j];
            }
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) Cn[i][j] += MC[i][k] * M[j][k];
                Cn[i][j] += noise * g[i] * g[j];
            }
        }
        for (int i = 0; i < 3; ++i) {
            m[i] = mn[i];
            for (int j = 0; j < 3; ++j) C[i][j] = Cn[i][j];
        }
    }
    AugmentedMoments out;
    for (int i = 0; i < 3; ++i) {
        out.mean[static_cast<std::size_t>(i)] = static_cast<double>(m[i]);
        for (int j = 0; j < 3; ++j) {
            // Symmetrize: the two triangles agree up to rounding.
            out.covariance[static_cast<std::size_t>(3 * i + j)] =
                static_cast<double>((C[i][j] + C[j][i]) / 2.0L);
        }
    }
    return out;
}

AugmentedMoments oracle_moments(const MethodDef& method, double h, long long N,
                                const OscillatorParams& params) {
    return oracle_moments(evaluate(method, h), h, N, params);
}

double log_upper_tail(double z) {
    if (std::isnan(z)) return z;
    if (z == kInf) return -kInf;
    if (z < 5.0) return std::log(0.5 * std::erfc(z / std::numbers::sqrt2));
    return log_upper_tail_cf(z);
}

Probability interval_probability(const GaussianLaw& law, double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
        throw DomainError("interval_probability needs lo <= hi");
    }
    if (!(law.variance >= 0.0)) throw DomainError("interval_probability needs variance >= 0");
    if (law.variance == 0.0) {
        const bool inside = lo <= law.mean && law.mean <= hi;
        return inside ? Probability{1.0, 0.0, false} : Probability{0.0, -kInf, false};
    }
    const double sigma = std::sqrt(law.variance);
    const double zl = (lo - law.mean) / sigma;
    const double zh = (hi - law.mean) / sigma;
    if (zl >= 0.0) return from_log(log_diff_exp(log_upper_tail(zl), log_upper_tail(zh)));
    if (zh <= 0.0) return from_log(log_diff_exp(log_upper_tail(-zh), log_upper_tail(-zl)));
    // The interval straddles the mean; both halves are non-negative.
    const double mass = 0.5 * (std::erf(zh / std::numbers::sqrt2) - std::erf(zl / std::numbers::sqrt2));
    return from_log(std::log(mass));
}

double gaussian_tail_bound(double mu, double sigma, double x) {
    if (!(sigma > 0.0)) throw DomainError("gaussian_tail_bound needs sigma > 0");
    if (!(x > mu)) throw DomainError("gaussian_tail_bound needs x > mu");
    const double d = x - mu;
    return sigma / (d * std::sqrt(2.0 * std::numbers::pi)) * std::exp(-d * d / (2.0 * sigma * sigma));
}

double gaussian_lower_tail_bound(double mu, double sigma, double x) {
    if (!(x < mu)) throw DomainError("gaussian_lower_tail_bound needs x < mu");
    return gaussian_tail_bound(-mu, sigma, -x);
}

}  // namespace ldposc
