#include "ldposc/search.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "ldposc/ldp.hpp"
#include "ldposc/oscillator.hpp"

namespace ldposc {

namespace {

std::string number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::string tag(const AnsatzParams& p) {
    return "c11=" + number(p.c11) + ",c12=" + number(p.c12) + ",c22=" + number(p.c22) +
           ",d1=" + number(p.d1) + ",d2=" + number(p.d2);
}

// "<lead> + (<coef>)*<term>", dropping a zero correction.
std::string affine(const std::string& lead, double coef, const std::string& term) {
    if (coef == 0.0) return lead;
    return lead + " + (" + number(coef) + ")*" + term;
}

bool same_coefficients(const MethodDef& a, const MethodDef& b, const std::vector<double>& probes) {
    for (double h : probes) {
        const Coefficients x = a.coefficients(h);
        const Coefficients y = b.coefficients(h);
        const std::array<double, 6> u{x.a.a11, x.a.a12, x.a.a21, x.a.a22, x.b.x, x.b.y};
        const std::array<double, 6> v{y.a.a11, y.a.a12, y.a.a21, y.a.a22, y.b.x, y.b.y};
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (std::abs(u[k] - v[k]) > 1e-14 * (1.0 + std::abs(v[k]))) return false;
        }
    }
    return true;
}

}  // namespace

MethodDef SearchHit::method() const {
    return ansatz_method("ansatz(" + tag(params) + ")", params,
                         {catalog_id.empty() ? "ansatz" : catalog_id, "symplectic ansatz " + tag(params),
                          {0.0, 2.0}, MethodGroup::Constructed, {}});
}

MethodFile SearchHit::file() const {
    MethodFile f;
    f.name = catalog_id.empty() ? "ansatz" : catalog_id;
    f.description = "symplectic ansatz " + tag(params);
    f.range = {0.0, 2.0};
    f.expressions = {affine("1", params.c11, "h^2"),  affine("h", params.c12, "h^2"),
                     affine("-h", params.c21, "h^2"), affine("1", params.c22, "h^2"),
                     params.d1 == 0.0 ? "0" : "(" + number(params.d1) + ")*h",
                     affine("1", params.d2, "h")};
    return f;
}

std::vector<SearchHit> exact_preservation_search(Observable observable, const SearchConfig& config) {
    const double target = continuous_rate(observable, OscillatorParams{}).coefficient();
    std::vector<SearchHit> hits;
    std::vector<AnsatzParams> seen;

    for (double sigma : config.sigma_grid) {
        const double disc = 1.0 - 4.0 * sigma * sigma;
        if (disc < 0.0) continue;
        const double root = std::sqrt(disc);
        const std::array<std::pair<double, double>, 2> orderings{
            {{(-1.0 - root) / 2.0, (-1.0 + root) / 2.0}, {(-1.0 + root) / 2.0, (-1.0 - root) / 2.0}}};
        for (const auto& [c11, c22] : orderings) {
            for (double d1 : config.d_grid) {
                for (double d2 : config.d_grid) {
                    const AnsatzParams p{c11, sigma, sigma, c22, d1, d2};
                    const bool duplicate = std::any_of(seen.begin(), seen.end(), [&](const AnsatzParams& q) {
                        return q.c11 == p.c11 && q.c12 == p.c12 && q.c22 == p.c22 && q.d1 == p.d1 &&
                               q.d2 == p.d2;
                    });
                    if (duplicate) continue;
                    seen.push_back(p);

                    double worst = 0.0;
                    bool match = true;
                    for (double h : config.probe_h) {
                        const Coefficients c = Coefficients::from_shift(
                            {c11 * h * h, h + sigma * h * h, -h + sigma * h * h, c22 * h * h},
                            {d1 * h, 1.0 + d2 * h});
                        const LdpClassification cls = rate_function(c, h, observable, 1.0);
                        if (!cls.applicable || cls.modified_rate.is_degenerate()) {
                            match = false;
                            break;
                        }
                        const double dev = std::abs(cls.modified_rate.coefficient() - target) / target;
                        worst = std::max(worst, dev);
                        if (dev > config.tolerance) {
                            match = false;
                            break;
                        }
                    }
                    if (!match) continue;
                    SearchHit hit{p, "", worst};
                    const MethodDef candidate = hit.method();
                    for (const MethodDef& m : catalog()) {
                        if (m.group() == MethodGroup::Constructed &&
                            same_coefficients(candidate, m, config.probe_h)) {
                            hit.catalog_id = m.id();
                        }
                    }
                    hits.push_back(std::move(hit));
                }
            }
        }
    }
    return hits;
}

}  // namespace ldposc
