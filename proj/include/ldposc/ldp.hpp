#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ldposc/gaussian_law.hpp"
#include "ldposc/method.hpp"
#include "ldposc/types.hpp"

namespace ldposc {

enum class Regime { Symplectic, NonSymplectic, Excluded };

std::string_view to_string(Regime regime) noexcept;

/// Rate function of A_N or B_N for one method at one step-size.
struct LdpClassification {
    Observable observable = Observable::MeanPosition;
    Regime regime = Regime::Excluded;
    ConditionReport conditions;
    bool applicable = false;
    /// Failed assumption when not applicable: "(A1)", "(A4)", "excluded, det(A)>1", "range".
    std::string reason;
    /// Lambda^h(lambda) = log_mgf * lambda^2 (valid when applicable).
    double log_mgf = 0.0;
    RateFunction rate = RateFunction::degenerate();           ///< I^h or J^h, in N
    RateFunction modified_rate = RateFunction::degenerate();  ///< rate / h, in t_N = N h
};

/// S = (p+q)^2 (4 + tr) - 2 p q (2 - tr); positive for every symplectic (A, b)
/// with a complex eigenpair and b != 0.
double position_positivity_factor(const Coefficients& coefficients) noexcept;

/// T = (p+q)^2 - p q (2 - tr); positive under the same hypotheses.
double velocity_positivity_factor(const Coefficients& coefficients) noexcept;

/// Coefficient c of Lambda^h(lambda) = c lambda^2:
///   symplectic, mean position:     alpha^2 h S / (2 (2+tr) (2-tr)^2)
///   symplectic, mean velocity:     alpha^2 T / ((4 - tr^2) h)
///   non-symplectic, mean position: (alpha^2 h / 2) ((p+q) / (1 - tr + det))^2
///   non-symplectic, mean velocity: 0
/// Throws ConditionError naming the failed assumption when no LDP applies and
/// InvariantViolation if S or T is not positive.
double log_mgf_coefficient(const Coefficients& coefficients, double h, Observable observable,
                           double alpha);
double log_mgf_coefficient(const MethodDef& method, double h, Observable observable,
                           const OscillatorParams& params);

/// sup_lambda (y lambda - c lambda^2): Quadratic{1/(4c)} for c > 0, Degenerate
/// for c = 0. DomainError for c < 0.
RateFunction legendre_transform(double c);

/// Never throws for inapplicable configurations; they come back with
/// applicable = false and a reason.
LdpClassification rate_function(const Coefficients& coefficients, double h, Observable observable,
                                double alpha);
LdpClassification rate_function(const MethodDef& method, double h, Observable observable,
                                const OscillatorParams& params);

enum class Verdict { ExactlyPreserves, AsymptoticallyPreserves, DoesNotPreserve, Inconclusive };

std::string_view to_string(Verdict verdict) noexcept;

/// Tolerance for "modified coefficient equals the continuous one".
inline constexpr double kExactTolerance = 1e-10;

struct PreservationEntry {
    double h = 0.0;
    bool applicable = false;
    std::string reason;
    RateFunction modified_rate = RateFunction::degenerate();
};

struct PreservationReport {
    Observable observable = Observable::MeanPosition;
    std::vector<PreservationEntry> entries;  ///< in the order of the h sequence
    double target = 0.0;                     ///< continuous-rate coefficient
    Verdict verdict = Verdict::Inconclusive;
    /// ExactlyPreserves backed by the method's analytic record rather than
    /// the probe values alone.
    bool symbolic = false;
    /// Least-squares slope of log|coefficient - target| against log h over the
    /// applicable entries; NaN when exact or degenerate.
    double fitted_order = 0.0;

    /// "exactly-preserves", "exactly-preserves(numeric)", ...
    std::string verdict_label() const;
};

/// h = 2^-k, k = 2..8.
std::vector<double> default_h_sequence();

/// Modified coefficients along a strictly decreasing h sequence and the verdict:
///   ExactlyPreserves         every coefficient within kExactTolerance (relative) of the target
///   AsymptoticallyPreserves  |coefficient - target| decreases monotonically over the
///                            smaller-h half and its fitted order is >= 0.5
///   DoesNotPreserve          otherwise, or any degenerate rate
///   Inconclusive             no applicable step-size
PreservationReport preservation_report(const MethodDef& method, Observable observable,
                                       const std::vector<double>& h_sequence,
                                       const OscillatorParams& params);

/// Least-squares slope of log(y) against log(x); also returns the RMS residual.
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};
LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

/// -(1/N) log P(observable_N in [lo, hi]) from the exact Gaussian law of A_N or
/// B_N = x_N/(N h). DomainError when the event has probability zero.
double finite_N_decay_rate(const MethodDef& method, double h, long long N, Observable observable,
                           double lo, double hi, const OscillatorParams& params);

}  // namespace ldposc
