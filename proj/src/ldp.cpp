#include "ldposc/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ldposc/error.hpp"
#include "ldposc/oscillator.hpp"

namespace ldposc {

namespace {

struct Classification {
    Regime regime = Regime::Excluded;
    std::string reason;  // empty when an LDP applies
};

Classification classify(const ConditionReport& r, Observable observable) {
    if (r.excluded) return {Regime::Excluded, "excluded, det(A)>1"};
    if (!r.a1) return {r.a2 ? Regime::Symplectic : Regime::NonSymplectic, "(A1)"};
    if (r.a2) return {Regime::Symplectic, ""};
    if (!r.a3) return {Regime::Excluded, "(A3)"};
    if (observable == Observable::MeanPosition && !r.a4) return {Regime::NonSymplectic, "(A4)"};
    return {Regime::NonSymplectic, ""};
}

double unchecked_log_mgf(const Coefficients& c, Regime regime, double h, Observable observable,
                         double alpha) {
    const double a2 = alpha * alpha;
    if (regime == Regime::Symplectic) {
        const double two_minus = c.two_minus_trace();
        const double two_plus = 2.0 + c.trace();
        if (observable == Observable::MeanPosition) {
            const double S = position_positivity_factor(c);
            if (!(S > 0.0)) throw InvariantViolation("position positivity factor S <= 0");
            return a2 * h * S / (2.0 * two_plus * two_minus * two_minus);
        }
        const double T = velocity_positivity_factor(c);
        if (!(T > 0.0)) throw InvariantViolation("velocity positivity factor T <= 0");
        return a2 * T / (two_minus * two_plus * h);
    }
    if (observable == Observable::MeanVelocity) return 0.0;
    const double ratio = c.drift_coupling() / c.one_minus_trace_plus_det();
    return 0.5 * a2 * h * ratio * ratio;
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
}

}  // namespace

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Symplectic:
            return "symplectic";
        case Regime::NonSymplectic:
            return "non-symplectic";
        case Regime::Excluded:
            return "excluded";
    }
    return "unknown";
}

std::string_view to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::ExactlyPreserves:
            return "exactly-preserves";
        case Verdict::AsymptoticallyPreserves:
            return "asymptotically-preserves";
        case Verdict::DoesNotPreserve:
            return "does-not-preserve";
        case Verdict::Inconclusive:
            return "inconclusive";
    }
    return "unknown";
}

double position_positivity_factor(const Coefficients& c) noexcept {
    const double p = c.b.x;
    const double q = c.coupling();
    const double sum = c.drift_coupling();
    return sum * sum * (4.0 + c.trace()) - 2.0 * p * q * c.two_minus_trace();
}

double velocity_positivity_factor(const Coefficients& c) noexcept {
    const double p = c.b.x;
    const double q = c.coupling();
    const double sum = c.drift_coupling();
    return sum * sum - p * q * c.two_minus_trace();
}

double log_mgf_coefficient(const Coefficients& c, double h, Observable observable, double alpha) {
    if (!(h > 0.0)) throw DomainError("step-size must be positive");
    require_alpha(alpha);
    const ConditionReport report = check_conditions(c);
    const Classification cls = classify(report, observable);
    if (!cls.reason.empty()) {
        throw ConditionError(cls.reason, "no LDP for " + std::string(to_string(observable)) +
                                             ": assumption " + cls.reason + " fails");
    }
    return unchecked_log_mgf(c, cls.regime, h, observable, alpha);
}

double log_mgf_coefficient(const MethodDef& method, double h, Observable observable,
                           const OscillatorParams& params) {
    require_admissible(method, h);
    return log_mgf_coefficient(evaluate(method, h), h, observable, params.alpha);
}

RateFunction legendre_transform(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw DomainError("log-MGF coefficient must be finite and >= 0");
    }
    if (c == 0.0) return RateFunction::degenerate();
    return RateFunction::quadratic(1.0 / (4.0 * c));
}

LdpClassification rate_function(const Coefficients& c, double h, Observable observable,
                                double alpha) {
    if (!(h > 0.0)) throw DomainError("step-size must be positive");
    require_alpha(alpha);
    LdpClassification out;
    out.observable = observable;
    out.conditions = check_conditions(c);
    const Classification cls = classify(out.conditions, observable);
    out.regime = cls.regime;
    out.reason = cls.reason;
    if (!cls.reason.empty()) return out;
    out.applicable = true;
    out.log_mgf = unchecked_log_mgf(c, cls.regime, h, observable, alpha);
    out.rate = legendre_transform(out.log_mgf);
    out.modified_rate = out.rate.divided_by(h);
    return out;
}

LdpClassification rate_function(const MethodDef& method, double h, Observable observable,
                                const OscillatorParams& params) {
    LdpClassification out = rate_function(evaluate(method, h), h, observable, params.alpha);
    if (out.applicable && !method.range().contains(h)) {
        out.applicable = false;
        out.reason = "range";
    }
    return out;
}

std::string PreservationReport::verdict_label() const {
    std::string label(to_string(verdict));
    if (verdict == Verdict::ExactlyPreserves && !symbolic) label += "(numeric)";
    return label;
}

std::vector<double> default_h_sequence() {
    std::vector<double> hs;
    for (int k = 2; k <= 8; ++k) hs.push_back(std::ldexp(1.0, -k));
    return hs;
}

LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("log-log fit needs >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw DomainError("log-log fit needs positive data");
        const double lx = std::log(x[k]);
        const double ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (!(denom > 0.0)) throw DomainError("log-log fit needs distinct abscissae");
    LogLogFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = std::log(y[k]) - (fit.intercept + fit.slope * std::log(x[k]));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

PreservationReport preservation_report(const MethodDef& method, Observable observable,
                                       const std::vector<double>& h_sequence,
                                       const OscillatorParams& params) {
    for (std::size_t k = 1; k < h_sequence.size(); ++k) {
        if (!(h_sequence[k] < h_sequence[k - 1])) {
            throw DomainError("preservation h sequence must be strictly decreasing");
        }
    }
    PreservationReport report;
    report.observable = observable;
    report.target = continuous_rate(observable, params).coefficient();
    report.fitted_order = std::numeric_limits<double>::quiet_NaN();

    std::vector<double> hs;
    std::vector<double> errors;
    bool degenerate = false;
    for (double h : h_sequence) {
        const LdpClassification cls = rate_function(method, h, observable, params);
        PreservationEntry entry;
        entry.h = h;
        entry.applicable = cls.applicable;
        entry.reason = cls.reason;
        if (cls.applicable) {
            entry.modified_rate = cls.modified_rate;
            if (cls.modified_rate.is_degenerate()) {
                degenerate = true;
            } else {
                hs.push_back(h);
                errors.push_back(std::abs(cls.modified_rate.coefficient() - report.target));
            }
        }
        report.entries.push_back(std::move(entry));
    }

    if (!degenerate && hs.empty()) {
        report.verdict = Verdict::Inconclusive;
        return report;
    }
    if (degenerate) {
        report.verdict = Verdict::DoesNotPreserve;
        return report;
    }
    const double scale = std::max(1.0, report.target);
    const bool exact = std::all_of(errors.begin(), errors.end(),
                                   [&](double e) { return e <= kExactTolerance * scale; });
    if (exact) {
        report.verdict = Verdict::ExactlyPreserves;
        report.symbolic = method.claims_exact(observable);
        return report;
    }
    if (hs.size() < 2 || std::any_of(errors.begin(), errors.end(), [](double e) { return e == 0.0; })) {
        report.verdict = Verdict::DoesNotPreserve;
        return report;
    }
    report.fitted_order = fit_log_log(hs, errors).slope;
    const std::size_t start = hs.size() / 2;
    bool monotone = true;
    for (std::size_t k = start + 1; k < errors.size(); ++k) {
        if (!(errors[k] < errors[k - 1])) monotone = false;
    }
    report.verdict = monotone && report.fitted_order >= 0.5 ? Verdict::AsymptoticallyPreserves
                                                            : Verdict::DoesNotPreserve;
    return report;
}

double finite_N_decay_rate(const MethodDef& method, double h, long long N, Observable observable,
                           double lo, double hi, const OscillatorParams& params) {
    const GaussianLaw law = observable == Observable::MeanPosition ? law_A_N(method, h, N, params)
                                                                   : law_B_N(method, h, N, params);
    const Probability p = interval_probability(law, lo, hi);
    if (p.log == -std::numeric_limits<double>::infinity()) {
        throw DomainError("event has probability zero under a degenerate law");
    }
    return -p.log / static_cast<double>(N);
}

}  // namespace ldposc
