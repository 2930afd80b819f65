#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ldposc/method.hpp"

namespace ldposc {

/// Arithmetic expression in the step-size h, compiled to postfix form.
/// Grammar in docs/method-format.md.
class Expression {
public:
    /// Throws ParseError with line 1 and a 1-based column into `text`.
    static Expression parse(std::string_view text);

    double evaluate(double h) const;
    const std::string& source() const noexcept { return source_; }

    /// True when the expression does not mention h.
    bool is_constant() const noexcept { return constant_; }

    enum class Op { Number, H, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Tan, Exp, Log, Sqrt };
    struct Instruction {
        Op op;
        double value = 0.0;
    };

private:
    std::string source_;
    std::vector<Instruction> program_;
    bool constant_ = true;
};

/// Keys of the six coefficient expressions, in file order.
inline constexpr std::array<std::string_view, 6> kCoefficientKeys = {"a11", "a12", "a21",
                                                                     "a22", "b1",  "b2"};

/// Parsed contents of a method-definition file.
struct MethodFile {
    std::string name;
    std::string description;
    AdmissibleRange range;
    std::array<std::string, 6> expressions;  ///< indexed like kCoefficientKeys
};

/// Parses method-definition text. Errors carry line/column; an empty file
/// fails at line 1, column 1.
MethodFile parse_method_file(std::string_view text);

/// Renders a file that parse_method_file() reads back to the same record.
std::string format_method_file(const MethodFile& file);

/// Compiles the expressions into a method with group User and id "file:<name>".
MethodDef method_from_file(const MethodFile& file);

/// Reads and compiles a method file from disk.
MethodDef load_method_file(const std::string& path);

}  // namespace ldposc
