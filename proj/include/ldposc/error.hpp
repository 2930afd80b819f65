#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ldposc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (T <= 0, h <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A method definition cannot be used, e.g. its noise vector vanishes.
class InvalidMethodError : public Error {
public:
    using Error::Error;
};

/// A structural assumption on the coefficients (complex eigenpair, det bounds,
/// admissible step-size, ...) does not hold. `assumption()` names it.
class ConditionError : public Error {
public:
    ConditionError(std::string assumption, const std::string& what)
        : Error(what), assumption_(std::move(assumption)) {}

    const std::string& assumption() const noexcept { return assumption_; }

private:
    std::string assumption_;
};

/// Malformed method-definition text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A mathematical invariant that must hold by construction was violated.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace ldposc
