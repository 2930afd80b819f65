#pragma once

#include <string>
#include <string_view>

namespace ldposc {

struct Vector2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Vector2&, const Vector2&) = default;
};

/// Row-major 2x2 real matrix.
struct Matrix2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    constexpr double det() const noexcept { return a11 * a22 - a12 * a21; }
    constexpr double trace() const noexcept { return a11 + a22; }

    constexpr Vector2 operator*(const Vector2& v) const noexcept {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }

    constexpr Matrix2 operator*(const Matrix2& m) const noexcept {
        return {a11 * m.a11 + a12 * m.a21, a11 * m.a12 + a12 * m.a22,
                a21 * m.a11 + a22 * m.a21, a21 * m.a12 + a22 * m.a22};
    }

    static constexpr Matrix2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }

    friend constexpr bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Parameters of the stochastic oscillator  dX = Y dt,  dY = -X dt + alpha dW.
struct OscillatorParams {
    double alpha = 1.0;  ///< noise intensity, > 0 (0 is accepted by samplers only)
    double x0 = 0.0;
    double y0 = 0.0;
};

/// Scalar Gaussian N(mean, variance).
struct GaussianLaw {
    double mean = 0.0;
    double variance = 0.0;
};

/// Long-time observables of the oscillator and of one-step methods:
/// mean position (1/T) int X dt  ~  (1/N) sum x_n,
/// mean velocity X_T / T         ~  x_N / (N h).
enum class Observable { MeanPosition, MeanVelocity };

std::string_view to_string(Observable observable) noexcept;

/// Accepts "mean-position"/"position"/"A" and "mean-velocity"/"velocity"/"B".
Observable parse_observable(std::string_view text);

/// Rate function y -> c y^2 (Quadratic) or the degenerate
/// y -> {0 if y = 0, +inf otherwise}.
class RateFunction {
public:
    enum class Kind { Quadratic, Degenerate };

    static RateFunction quadratic(double coefficient);
    static RateFunction degenerate() noexcept { return RateFunction(Kind::Degenerate, 0.0); }

    Kind kind() const noexcept { return kind_; }
    bool is_degenerate() const noexcept { return kind_ == Kind::Degenerate; }

    /// Quadratic coefficient c; +inf for the degenerate rate.
    double coefficient() const noexcept;

    double operator()(double y) const noexcept;

    /// Infimum over the closed interval [lo, hi] (lo may be -inf, hi +inf).
    double infimum(double lo, double hi) const noexcept;

    /// The rate divided by a positive scale (the degenerate rate is unchanged).
    RateFunction divided_by(double scale) const;

    friend bool operator==(const RateFunction&, const RateFunction&) = default;

private:
    RateFunction(Kind kind, double coefficient) noexcept : kind_(kind), coefficient_(coefficient) {}

    Kind kind_;
    double coefficient_;
};

std::string describe(const RateFunction& rate);

}  // namespace ldposc
