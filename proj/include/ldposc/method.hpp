#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ldposc/types.hpp"

namespace ldposc {

/// Coefficients (A, b) of the one-step method
///   (x, y)_{n+1} = A (x, y)_n + alpha b dW_n
/// at a fixed step-size.
///
/// `shift` holds A - I. Catalog evaluators fill it analytically (e.g.
/// cos h - 1 = -2 sin^2(h/2)) so the O(h^2) quantities below keep full
/// relative precision as h -> 0; user methods get A - I by subtraction.
struct Coefficients {
    Matrix2 a;
    Vector2 b;
    Matrix2 shift;

    /// Builds the record from A and b, taking A - I by plain subtraction.
    static Coefficients from_matrix(const Matrix2& a, const Vector2& b) noexcept;

    /// Builds the record from A - I and b; A = I + shift.
    static Coefficients from_shift(const Matrix2& shift, const Vector2& b) noexcept;

    double det() const noexcept { return 1.0 + det_minus_one(); }
    double trace() const noexcept { return 2.0 - two_minus_trace(); }

    double det_minus_one() const noexcept {
        return shift.a11 + shift.a22 + shift.a11 * shift.a22 - a.a12 * a.a21;
    }
    double two_minus_trace() const noexcept { return -(shift.a11 + shift.a22); }

    /// 1 - tr(A) + det(A) = (a11 - 1)(a22 - 1) - a12 a21.
    double one_minus_trace_plus_det() const noexcept {
        return shift.a11 * shift.a22 - a.a12 * a.a21;
    }

    /// 4 det(A) - tr(A)^2, positive iff A has a complex-conjugate eigenpair.
    double discriminant() const noexcept {
        const double tm = two_minus_trace();
        return 4.0 * det_minus_one() + tm * (4.0 - tm);
    }

    /// q = a12 b2 - a22 b1.
    double coupling() const noexcept { return a.a12 * b.y - a.a22 * b.x; }

    /// b1 + q = b1 + a12 b2 - a22 b1 = a12 b2 - (a22 - 1) b1.
    double drift_coupling() const noexcept { return a.a12 * b.y - shift.a22 * b.x; }
};

/// Open step-size interval (lo, hi) on which a method's LDP hypotheses hold.
struct AdmissibleRange {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double h) const noexcept { return h > lo && h < hi; }
    std::string to_string() const;
};

/// Where a method comes from; drives the expected preservation behaviour.
enum class MethodGroup {
    Symplectic,     ///< symplectic catalog schemes (beta-method, EX, INT, OPT)
    NonSymplectic,  ///< dissipative catalog schemes (theta-method, predictor-correctors)
    Constructed,    ///< ansatz schemes built to preserve an LDP exactly (M1-M6)
    Reference,      ///< Euler-Maruyama, outside the LDP theory (det A > 1)
    User,           ///< parsed from a method-definition file
};

std::string_view to_string(MethodGroup group) noexcept;

using CoefficientEvaluator = std::function<Coefficients(double h)>;

/// A named one-step method h -> (A(h), b(h)). Immutable once built.
class MethodDef {
public:
    struct Metadata {
        std::string name;         ///< display name, e.g. "OPT"
        std::string description;  ///< free-form
        AdmissibleRange range;
        MethodGroup group = MethodGroup::User;
        /// Observables whose continuous rate this method reproduces exactly,
        /// established analytically for catalog entries.
        std::vector<Observable> exact_observables;
    };

    MethodDef(std::string id, CoefficientEvaluator evaluator, Metadata metadata);

    /// Selector understood by find_method(), e.g. "beta:0.5".
    const std::string& id() const noexcept { return id_; }
    const std::string& name() const noexcept { return metadata_.name; }
    const std::string& description() const noexcept { return metadata_.description; }
    const AdmissibleRange& range() const noexcept { return metadata_.range; }
    MethodGroup group() const noexcept { return metadata_.group; }
    const std::vector<Observable>& exact_observables() const noexcept {
        return metadata_.exact_observables;
    }
    bool claims_exact(Observable observable) const noexcept;

    /// Raw coefficients without validation.
    Coefficients coefficients(double h) const { return evaluator_(h); }

private:
    std::string id_;
    CoefficientEvaluator evaluator_;
    Metadata metadata_;
};

/// Coefficients at step h. Throws DomainError for h <= 0 and
/// InvalidMethodError when b = 0 (the method ignores the noise).
Coefficients evaluate(const MethodDef& method, double h);

/// Throws ConditionError("range") unless h lies in the method's admissible range.
void require_admissible(const MethodDef& method, double h);

inline constexpr double kSymplecticTolerance = 1e-12;

/// Structural assumptions on (A, b):
///   a1: 4 det A - tr(A)^2 > 0
///   a2: |det A - 1| <= tol          (symplectic)
///   a3: 0 < det A < 1, not a2
///   a4: |b1 + a12 b2 - a22 b1| > tol
///   excluded: det A > 1, not a2
struct ConditionReport {
    double det = 0.0;
    double trace = 0.0;
    bool a1 = false;
    bool a2 = false;
    bool a3 = false;
    bool a4 = false;
    bool symplectic = false;
    bool excluded = false;
};

ConditionReport check_conditions(const Coefficients& coefficients,
                                 double tolerance = kSymplecticTolerance);

ConditionReport check_conditions(const Matrix2& a, const Vector2& b,
                                 double tolerance = kSymplecticTolerance);

/// Ratios measuring closeness to Euler-Maruyama at one step-size.
struct ConditionBRow {
    double h = 0.0;
    double r1 = 0.0;  ///< (|a11-1| + |a22-1| + |a12-h| + |a21+h|) / h^2
    double r2 = 0.0;  ///< (|b1| + |b2-1|) / h
    double r3 = 0.0;  ///< (1 - tr A + det A) / h^2
    double r4 = 0.0;  ///< (b1 + a12 b2 - a22 b1) / h
};

struct ConditionBDiagnostics {
    std::vector<ConditionBRow> rows;
    bool r1_bounded = false;
    bool r2_bounded = false;
    bool r3_near_one = false;
    bool r4_near_one = false;
    /// All four checks pass.
    bool consistent = false;
};

/// Tabulates the ratios along a strictly decreasing positive h sequence
/// (at least two values). r1, r2 count as bounded when their maximum over
/// the tail (the smaller-h half) stays within a factor 10 of their value at
/// the start of the tail; r3 and r4 must be within 10% of 1 at the smallest h.
ConditionBDiagnostics condition_b_diagnostics(const MethodDef& method,
                                              const std::vector<double>& h_sequence);

}  // namespace ldposc
