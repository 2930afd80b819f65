#include "ldposc/method_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "ldposc/error.hpp"

namespace ldposc {

namespace {

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }
bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }
bool is_alpha(char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_'; }

struct FunctionName {
    std::string_view name;
    Expression::Op op;
};

constexpr std::array<FunctionName, 6> kFunctions = {{{"sin", Expression::Op::Sin},
                                                      {"cos", Expression::Op::Cos},
                                                      {"tan", Expression::Op::Tan},
                                                      {"exp", Expression::Op::Exp},
                                                      {"log", Expression::Op::Log},
                                                      {"sqrt", Expression::Op::Sqrt}}};

// Recursive descent straight to postfix.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::vector<Expression::Instruction> run() {
        skip();
        if (pos_ == text_.size()) fail("empty expression");
        expression();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return std::move(out_);
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(1, pos_ + 1, message);
    }

    void skip() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    bool accept(char ch) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void emit(Expression::Op op, double value = 0.0) { out_.push_back({op, value}); }

    void expression() {
        term();
        for (;;) {
            if (accept('+')) {
                term();
                emit(Expression::Op::Add);
            } else if (accept('-')) {
                term();
                emit(Expression::Op::Sub);
            } else {
                return;
            }
        }
    }

    void term() {
        unary();
        for (;;) {
            if (accept('*')) {
                unary();
                emit(Expression::Op::Mul);
            } else if (accept('/')) {
                unary();
                emit(Expression::Op::Div);
            } else {
                return;
            }
        }
    }

    void unary() {
        if (accept('-')) {
            unary();
            emit(Expression::Op::Neg);
        } else if (accept('+')) {
            unary();
        } else {
            power();
        }
    }

    // '^' binds tighter than unary minus on its left and is right-associative:
    // -h^2 = -(h^2), 2^-1 = 0.5, 2^3^2 = 2^9.
    void power() {
        primary();
        if (accept('^')) {
            unary();
            emit(Expression::Op::Pow);
        }
    }

    void primary() {
        skip();
        if (pos_ == text_.size()) fail("unexpected end of expression");
        const char ch = text_[pos_];
        if (is_digit(ch) || ch == '.') {
            number();
        } else if (is_alpha(ch)) {
            identifier();
        } else if (accept('(')) {
            expression();
            if (!accept(')')) fail("expected ')'");
        } else {
            fail("unexpected '" + std::string(1, ch) + "'");
        }
    }

    void number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (is_digit(text_[pos_]) || text_[pos_] == '.')) ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && is_digit(text_[look])) {
                pos_ = look;
                while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        emit(Expression::Op::Number, value);
    }

    void identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
        const std::string_view word = text_.substr(start, pos_ - start);
        if (word == "h") {
            emit(Expression::Op::H);
            return;
        }
        if (word == "pi") {
            emit(Expression::Op::Number, std::numbers::pi);
            return;
        }
        for (const FunctionName& fn : kFunctions) {
            if (word == fn.name) {
                if (!accept('(')) fail("expected '(' after " + std::string(word));
                expression();
                if (!accept(')')) fail("expected ')'");
                emit(fn.op);
                return;
            }
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(word) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Expression::Instruction> out_;
};

std::string_view trim(std::string_view text) {
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

struct Line {
    std::size_t number;
    std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 1;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        lines.push_back({number++, line});
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return lines;
}

// Bound of an admissible range: "inf" or a constant expression.
double parse_bound(std::string_view text, std::size_t line, std::size_t column) {
    const std::string_view body = trim(text);
    const std::size_t lead = static_cast<std::size_t>(body.data() - text.data());
    if (body == "inf") return std::numeric_limits<double>::infinity();
    try {
        const Expression expr = Expression::parse(body);
        if (!expr.is_constant()) throw ParseError(1, 1, "range bounds must not depend on h");
        return expr.evaluate(0.0);
    } catch (const ParseError& e) {
        const std::string what = e.what();
        const std::size_t colon = what.find(": ");
        throw ParseError(line, column + lead + e.column() - 1, what.substr(colon + 2));
    }
}

AdmissibleRange parse_range(std::string_view value, std::size_t line, std::size_t column) {
    const std::string_view body = trim(value);
    const std::size_t lead = static_cast<std::size_t>(body.data() - value.data());
    if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
        throw ParseError(line, column + lead, "range must look like (lo, hi)");
    }
    const std::string_view inner = body.substr(1, body.size() - 2);
    const std::size_t comma = inner.find(',');
    if (comma == std::string_view::npos) {
        throw ParseError(line, column + lead, "range must look like (lo, hi)");
    }
    const std::size_t inner_col = column + lead + 1;
    AdmissibleRange range;
    range.lo = parse_bound(inner.substr(0, comma), line, inner_col);
    range.hi = parse_bound(inner.substr(comma + 1), line, inner_col + comma + 1);
    if (!(range.lo >= 0.0) || !(range.hi > range.lo)) {
        throw ParseError(line, column + lead, "range needs 0 <= lo < hi");
    }
    return range;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
    Expression expr;
    expr.source_ = std::string(trim(text));
    expr.program_ = Parser(text).run();
    for (const Instruction& ins : expr.program_) {
        if (ins.op == Op::H) expr.constant_ = false;
    }
    return expr;
}

double Expression::evaluate(double h) const {
    std::vector<double> stack;
    stack.reserve(program_.size());
    auto pop = [&stack] {
        const double v = stack.back();
        stack.pop_back();
        return v;
    };
    for (const Instruction& ins : program_) {
        switch (ins.op) {
            case Op::Number:
                stack.push_back(ins.value);
                break;
            case Op::H:
                stack.push_back(h);
                break;
            case Op::Neg:
                stack.back() = -stack.back();
                break;
            case Op::Sin:
                stack.back() = std::sin(stack.back());
                break;
            case Op::Cos:
                stack.back() = std::cos(stack.back());
                break;
            case Op::Tan:
                stack.back() = std::tan(stack.back());
                break;
            case Op::Exp:
                stack.back() = std::exp(stack.back());
                break;
            case Op::Log:
                stack.back() = std::log(stack.back());
                break;
            case Op::Sqrt:
                stack.back() = std::sqrt(stack.back());
                break;
            default: {
                const double rhs = pop();
                double& lhs = stack.back();
                switch (ins.op) {
                    case Op::Add:
                        lhs += rhs;
                        break;
                    case Op::Sub:
                        lhs -= rhs;
                        break;
                    case Op::Mul:
                        lhs *= rhs;
                        break;
                    case Op::Div:
                        lhs /= rhs;
                        break;
                    case Op::Pow:
                        lhs = std::pow(lhs, rhs);
                        break;
                    default:
                        break;
                }
            }
        }
    }
    return stack.back();
}

MethodFile parse_method_file(std::string_view text) {
    MethodFile file;
    std::array<bool, 6> seen{};
    bool seen_name = false;
    bool seen_description = false;
    bool seen_range = false;
    const std::vector<Line> lines = split_lines(text);

    for (const Line& line : lines) {
        std::string_view body = line.text;
        const std::size_t hash = body.find('#');
        if (hash != std::string_view::npos) body = body.substr(0, hash);
        if (trim(body).empty()) continue;

        const std::size_t eq = body.find('=');
        const std::string_view key = trim(body.substr(0, eq));
        const std::size_t key_col = static_cast<std::size_t>(key.data() - line.text.data()) + 1;
        if (eq == std::string_view::npos) {
            throw ParseError(line.number, key_col, "expected 'key = value'");
        }
        const std::string_view value = body.substr(eq + 1);
        const std::size_t value_col = eq + 2;
        if (trim(value).empty()) throw ParseError(line.number, value_col, "missing value");

        auto once = [&](bool& flag) {
            if (flag) throw ParseError(line.number, key_col, "duplicate key '" + std::string(key) + "'");
            flag = true;
        };

        if (key == "name") {
            once(seen_name);
            file.name = std::string(trim(value));
            continue;
        }
        if (key == "description") {
            once(seen_description);
            file.description = std::string(trim(value));
            continue;
        }
        if (key == "range") {
            once(seen_range);
            file.range = parse_range(value, line.number, value_col);
            continue;
        }
        std::optional<std::size_t> slot;
        for (std::size_t k = 0; k < kCoefficientKeys.size(); ++k) {
            if (key == kCoefficientKeys[k]) slot = k;
        }
        if (!slot) throw ParseError(line.number, key_col, "unknown key '" + std::string(key) + "'");
        once(seen[*slot]);
        try {
            file.expressions[*slot] = Expression::parse(value).source();
        } catch (const ParseError& e) {
            const std::string what = e.what();
            throw ParseError(line.number, value_col + e.column() - 1,
                             what.substr(what.find(": ") + 2));
        }
    }

    for (std::size_t k = 0; k < kCoefficientKeys.size(); ++k) {
        if (seen[k]) continue;
        std::size_t line = 1;
        std::size_t column = 1;
        if (!lines.empty()) {
            line = lines.back().number;
            column = lines.back().text.size() + 1;
        }
        throw ParseError(line, column, "missing coefficient '" + std::string(kCoefficientKeys[k]) + "'");
    }
    if (file.name.empty()) file.name = "user";
    return file;
}

std::string format_method_file(const MethodFile& file) {
    std::ostringstream os;
    os << "# method definition: (x,y)_{n+1} = A (x,y)_n + alpha b dW_n\n";
    os << "name = " << file.name << "\n";
    if (!file.description.empty()) os << "description = " << file.description << "\n";
    os << "range = (" << format_number(file.range.lo) << ", " << format_number(file.range.hi)
       << ")\n";
    for (std::size_t k = 0; k < kCoefficientKeys.size(); ++k) {
        os << kCoefficientKeys[k] << " = " << file.expressions[k] << "\n";
    }
    return os.str();
}

MethodDef method_from_file(const MethodFile& file) {
    std::array<Expression, 6> compiled;
    for (std::size_t k = 0; k < compiled.size(); ++k) {
        compiled[k] = Expression::parse(file.expressions[k]);
    }
    return MethodDef(
        "file:" + file.name,
        [compiled](double h) {
            const Matrix2 a{compiled[0].evaluate(h), compiled[1].evaluate(h), compiled[2].evaluate(h),
                            compiled[3].evaluate(h)};
            const Vector2 b{compiled[4].evaluate(h), compiled[5].evaluate(h)};
            return Coefficients::from_matrix(a, b);
        },
        {file.name, file.description, file.range, MethodGroup::User, {}});
}

MethodDef load_method_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open method file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return method_from_file(parse_method_file(buffer.str()));
}

}  // namespace ldposc
