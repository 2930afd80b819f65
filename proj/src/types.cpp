#include "ldposc/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ldposc/error.hpp"

namespace ldposc {

std::string_view to_string(Observable observable) noexcept {
    switch (observable) {
        case Observable::MeanPosition:
            return "mean-position";
        case Observable::MeanVelocity:
            return "mean-velocity";
    }
    return "unknown";
}

Observable parse_observable(std::string_view text) {
    if (text == "mean-position" || text == "position" || text == "A") return Observable::MeanPosition;
    if (text == "mean-velocity" || text == "velocity" || text == "B") return Observable::MeanVelocity;
    throw DomainError("unknown observable '" + std::string(text) +
                      "' (expected mean-position or mean-velocity)");
}

RateFunction RateFunction::quadratic(double coefficient) {
    if (!(coefficient >= 0.0) || !std::isfinite(coefficient)) {
        throw DomainError("quadratic rate coefficient must be finite and >= 0");
    }
    return RateFunction(Kind::Quadratic, coefficient);
}

double RateFunction::coefficient() const noexcept {
    return kind_ == Kind::Quadratic ? coefficient_ : std::numeric_limits<double>::infinity();
}

double RateFunction::operator()(double y) const noexcept {
    if (kind_ == Kind::Quadratic) return coefficient_ * y * y;
    return y == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double RateFunction::infimum(double lo, double hi) const noexcept {
    if (lo > hi) return std::numeric_limits<double>::infinity();
    if (lo <= 0.0 && hi >= 0.0) return 0.0;
    const double nearest = lo > 0.0 ? lo : hi;
    return (*this)(nearest);
}

RateFunction RateFunction::divided_by(double scale) const {
    if (!(scale > 0.0)) throw DomainError("rate scale must be positive");
    if (kind_ == Kind::Degenerate) return *this;
    return quadratic(coefficient_ / scale);
}

std::string describe(const RateFunction& rate) {
    if (rate.is_degenerate()) return "degenerate(0 at y=0, inf elsewhere)";
    std::ostringstream os;
    os.precision(17);
    os << rate.coefficient() << "*y^2";
    return os.str();
}

}  // namespace ldposc
