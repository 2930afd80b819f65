#include "ldposc/catalog.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "ldposc/error.hpp"

namespace ldposc {

namespace {

using Obs = Observable;

std::string format_parameter(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string text(buf.data(), end);
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    return text;
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

double parse_parameter(std::string_view text, std::string_view selector) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw InvalidMethodError("bad parameter in method selector '" + std::string(selector) + "'");
    }
    return value;
}

MethodDef exponential_family(std::string id, std::string name, std::string description,
                             std::vector<Obs> exact, Vector2 (*noise)(double)) {
    return MethodDef(
        std::move(id),
        [noise](double h) {
            const double c = std::cos(h);
            const double s = std::sin(h);
            const double half = std::sin(h / 2.0);
            const double shift = -2.0 * half * half;
            return Coefficients{{c, s, -s, c}, noise(h), {shift, s, -s, shift}};
        },
        {std::move(name), std::move(description), {0.0, std::numbers::pi}, MethodGroup::Symplectic,
         std::move(exact)});
}

MethodDef pc_pem_mr() {
    return MethodDef(
        "pc-pem-mr",
        [](double h) {
            const double h2 = h * h;
            const double d = 1.0 - h2 / 2.0;
            return Coefficients{{d, h * d, -h, d}, {h / 2.0, 1.0}, {-h2 / 2.0, h * d, -h, -h2 / 2.0}};
        },
        {"PC(PEM-MR)", "predictor-corrector: partitioned Euler predictor, midpoint corrector",
         {0.0, std::numbers::sqrt2}, MethodGroup::NonSymplectic, {}});
}

MethodDef pc_em_bem() {
    return MethodDef(
        "pc-em-bem",
        [](double h) {
            const double h2 = h * h;
            return Coefficients{{1.0 - h2, h, -h, 1.0 - h2}, {h, 1.0}, {-h2, h, -h, -h2}};
        },
        {"PC(EM-BEM)", "predictor-corrector: Euler-Maruyama predictor, backward Euler corrector",
         {0.0, 1.0}, MethodGroup::NonSymplectic, {}});
}

MethodDef euler_maruyama() {
    return MethodDef(
        "em",
        [](double h) { return Coefficients{{1.0, h, -h, 1.0}, {0.0, 1.0}, {0.0, h, -h, 0.0}}; },
        {"EM", "Euler-Maruyama; det A = 1 + h^2 > 1, outside the LDP theory", {0.0, 1.0},
         MethodGroup::Reference, {}});
}

MethodDef constructed(int index, const AnsatzParams& p, std::vector<Obs> exact) {
    const std::string tag = std::to_string(index);
    return ansatz_method("m" + tag, p,
                         {"M" + tag, "constructed symplectic ansatz method " + tag, {0.0, 2.0},
                          MethodGroup::Constructed, std::move(exact)});
}

std::vector<MethodDef> build_catalog() {
    std::vector<MethodDef> out;
    out.push_back(beta_method(0.0));
    out.push_back(beta_method(0.5));
    out.push_back(beta_method(1.0));
    out.push_back(exponential_family("ex", "EX", "exponential method", {Obs::MeanVelocity},
                                     [](double) { return Vector2{0.0, 1.0}; }));
    out.push_back(exponential_family("int", "INT", "integral method", {Obs::MeanVelocity},
                                     [](double h) { return Vector2{std::sin(h), std::cos(h)}; }));
    out.push_back(exponential_family("opt", "OPT", "optimal method", {Obs::MeanPosition},
                                     [](double h) {
                                         const double half = std::sin(h / 2.0);
                                         return Vector2{2.0 * half * half / h, std::sin(h) / h};
                                     }));
    out.push_back(theta_method(1.0));
    out.push_back(pc_pem_mr());
    out.push_back(pc_em_bem());

    const std::vector<Obs> both{Obs::MeanPosition, Obs::MeanVelocity};
    const std::vector<Obs> velocity{Obs::MeanVelocity};
    out.push_back(constructed(1, {-1.0, 0.0, 0.0, 0.0, 0.5, 0.0}, both));
    out.push_back(constructed(2, {-0.5, 0.5, 0.5, -0.5, 0.5, -0.5}, both));
    out.push_back(constructed(3, {-0.5, -0.5, -0.5, -0.5, 0.5, 0.5}, both));
    out.push_back(constructed(4, {0.0, 0.0, 0.0, -1.0, -0.5, 0.0}, velocity));
    out.push_back(constructed(5, {-0.5, 0.5, 0.5, -0.5, -0.5, -0.5}, velocity));
    out.push_back(constructed(6, {-0.5, -0.5, -0.5, -0.5, -0.5, 0.5}, velocity));
    out.push_back(euler_maruyama());
    return out;
}

}  // namespace

const std::vector<MethodDef>& catalog() {
    static const std::vector<MethodDef> methods = build_catalog();
    return methods;
}

MethodDef beta_method(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidMethodError("beta must lie in [0, 1]");
    std::vector<Obs> exact;
    if (beta == 0.5) exact.push_back(Obs::MeanPosition);
    std::string name = beta == 0.5 ? "midpoint" : "beta-method";
    return MethodDef(
        "beta:" + format_parameter(beta),
        [beta](double h) {
            const double h2 = h * h;
            const double d = 1.0 + beta * (1.0 - beta) * h2;
            const double a11 = (1.0 - (1.0 - beta) * (1.0 - beta) * h2) / d;
            const double a22 = (1.0 - beta * beta * h2) / d;
            return Coefficients{{a11, h / d, -h / d, a22},
                                {(1.0 - beta) * h / d, 1.0 / d},
                                {-(1.0 - beta) * h2 / d, h / d, -h / d, -beta * h2 / d}};
        },
        {std::move(name), "symplectic beta-method, beta=" + format_parameter(beta), {0.0, 2.0},
         MethodGroup::Symplectic, std::move(exact)});
}

MethodDef theta_method(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw InvalidMethodError("theta must lie in [0, 1]");
    return MethodDef(
        "theta:" + format_parameter(theta),
        [theta](double h) {
            const double h2 = h * h;
            const double d = 1.0 + theta * theta * h2;
            const double diag = (1.0 - (1.0 - theta) * theta * h2) / d;
            const double shift = -theta * h2 / d;
            return Coefficients{{diag, h / d, -h / d, diag},
                                {theta * h / d, 1.0 / d},
                                {shift, h / d, -h / d, shift}};
        },
        {"theta-method", "stochastic theta-method, theta=" + format_parameter(theta),
         {0.0, std::numeric_limits<double>::infinity()}, MethodGroup::NonSymplectic, {}});
}

MethodDef ansatz_method(std::string id, const AnsatzParams& p, MethodDef::Metadata metadata) {
    return MethodDef(
        std::move(id),
        [p](double h) {
            const double h2 = h * h;
            return Coefficients::from_shift({p.c11 * h2, h + p.c12 * h2, -h + p.c21 * h2, p.c22 * h2},
                                            {p.d1 * h, 1.0 + p.d2 * h});
        },
        std::move(metadata));
}

MethodDef find_method(std::string_view selector) {
    const std::string key = lower(selector);
    if (key == "midpoint") return beta_method(0.5);
    if (key.starts_with("beta:")) return beta_method(parse_parameter(selector.substr(5), selector));
    if (key.starts_with("theta:")) return theta_method(parse_parameter(selector.substr(6), selector));
    for (const MethodDef& method : catalog()) {
        if (key == method.id() || key == lower(method.name())) return method;
    }
    throw InvalidMethodError("unknown method '" + std::string(selector) + "'");
}

}  // namespace ldposc
