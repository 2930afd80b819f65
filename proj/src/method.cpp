#include "ldposc/method.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldposc/error.hpp"

namespace ldposc {

Coefficients Coefficients::from_matrix(const Matrix2& a, const Vector2& b) noexcept {
    return {a, b, {a.a11 - 1.0, a.a12, a.a21, a.a22 - 1.0}};
}

Coefficients Coefficients::from_shift(const Matrix2& shift, const Vector2& b) noexcept {
    return {{1.0 + shift.a11, shift.a12, shift.a21, 1.0 + shift.a22}, b, shift};
}

std::string AdmissibleRange::to_string() const {
    std::ostringstream os;
    os.precision(10);
    os << "(" << lo << ", ";
    if (std::isinf(hi)) {
        os << "inf";
    } else {
        os << hi;
    }
    os << ")";
    return os.str();
}

std::string_view to_string(MethodGroup group) noexcept {
    switch (group) {
        case MethodGroup::Symplectic:
            return "symplectic";
        case MethodGroup::NonSymplectic:
            return "non-symplectic";
        case MethodGroup::Constructed:
            return "constructed";
        case MethodGroup::Reference:
            return "reference";
        case MethodGroup::User:
            return "user";
    }
    return "unknown";
}

MethodDef::MethodDef(std::string id, CoefficientEvaluator evaluator, Metadata metadata)
    : id_(std::move(id)), evaluator_(std::move(evaluator)), metadata_(std::move(metadata)) {
    if (!evaluator_) throw InvalidMethodError("method '" + id_ + "' has no coefficient evaluator");
    if (metadata_.name.empty()) metadata_.name = id_;
}

bool MethodDef::claims_exact(Observable observable) const noexcept {
    return std::find(metadata_.exact_observables.begin(), metadata_.exact_observables.end(),
                     observable) != metadata_.exact_observables.end();
}

Coefficients evaluate(const MethodDef& method, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw DomainError("step-size must be positive and finite (method " + method.id() + ")");
    }
    Coefficients c = method.coefficients(h);
    if (c.b.x == 0.0 && c.b.y == 0.0) {
        throw InvalidMethodError("method " + method.id() +
                                 " has a zero noise vector b; it must depend on the Brownian motion");
    }
    return c;
}

void require_admissible(const MethodDef& method, double h) {
    if (!method.range().contains(h)) {
        std::ostringstream os;
        os << "step-size h=" << h << " outside the admissible range " << method.range().to_string()
           << " of method " << method.id();
        throw ConditionError("range", os.str());
    }
}

ConditionReport check_conditions(const Coefficients& c, double tolerance) {
    ConditionReport report;
    report.det = c.det();
    report.trace = c.trace();
    const double det_minus_one = c.det_minus_one();
    report.a1 = c.discriminant() > 0.0;
    report.a2 = std::abs(det_minus_one) <= tolerance;
    report.a3 = !report.a2 && report.det > 0.0 && det_minus_one < 0.0;
    report.a4 = std::abs(c.drift_coupling()) > tolerance;
    report.symplectic = report.a2;
    report.excluded = !report.a2 && det_minus_one > 0.0;
    return report;
}

ConditionReport check_conditions(const Matrix2& a, const Vector2& b, double tolerance) {
    return check_conditions(Coefficients::from_matrix(a, b), tolerance);
}

namespace {

constexpr double kBoundFactor = 10.0;
constexpr double kNearOne = 0.1;
constexpr double kZeroFloor = 1e-12;

bool tail_bounded(const std::vector<double>& values) {
    const std::size_t start = values.size() / 2;
    const double reference = std::max(values[start], kZeroFloor);
    const double peak = *std::max_element(values.begin() + static_cast<std::ptrdiff_t>(start),
                                          values.end());
    return peak <= kBoundFactor * reference;
}

}  // namespace

ConditionBDiagnostics condition_b_diagnostics(const MethodDef& method,
                                              const std::vector<double>& h_sequence) {
    if (h_sequence.size() < 2) throw DomainError("condition (B) diagnostics need >= 2 step-sizes");
    for (std::size_t k = 0; k < h_sequence.size(); ++k) {
        if (!(h_sequence[k] > 0.0)) throw DomainError("condition (B) step-sizes must be positive");
        if (k > 0 && !(h_sequence[k] < h_sequence[k - 1])) {
            throw DomainError("condition (B) step-sizes must be strictly decreasing");
        }
    }

    ConditionBDiagnostics out;
    std::vector<double> r1;
    std::vector<double> r2;
    for (double h : h_sequence) {
        const Coefficients c = evaluate(method, h);
        ConditionBRow row;
        row.h = h;
        row.r1 = (std::abs(c.shift.a11) + std::abs(c.shift.a22) + std::abs(c.a.a12 - h) +
                  std::abs(c.a.a21 + h)) /
                 (h * h);
        row.r2 = (std::abs(c.b.x) + std::abs(c.b.y - 1.0)) / h;
        row.r3 = c.one_minus_trace_plus_det() / (h * h);
        row.r4 = c.drift_coupling() / h;
        r1.push_back(row.r1);
        r2.push_back(row.r2);
        out.rows.push_back(row);
    }
    out.r1_bounded = tail_bounded(r1);
    out.r2_bounded = tail_bounded(r2);
    out.r3_near_one = std::abs(out.rows.back().r3 - 1.0) <= kNearOne;
    out.r4_near_one = std::abs(out.rows.back().r4 - 1.0) <= kNearOne;
    out.consistent = out.r1_bounded && out.r2_bounded && out.r3_near_one && out.r4_near_one;
    return out;
}

}  // namespace ldposc
