#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "ldposc/catalog.hpp"
#include "ldposc/ldp.hpp"
#include "ldposc/oscillator.hpp"
#include "ldposc/search.hpp"
#include "oracles.hpp"

using namespace ldposc;

namespace {

std::set<std::string> ids(const std::vector<SearchHit>& hits) {
    std::set<std::string> out;
    for (const SearchHit& h : hits) out.insert(h.catalog_id);
    return out;
}

}  // namespace

TEST_CASE("mean-position search finds M1-M3 only") {
    const auto hits = exact_preservation_search(Observable::MeanPosition);
    CHECK(hits.size() == 3);
    CHECK(ids(hits) == std::set<std::string>{"m1", "m2", "m3"});
}

TEST_CASE("mean-velocity search finds M1-M6 only") {
    const auto hits = exact_preservation_search(Observable::MeanVelocity);
    CHECK(hits.size() == 6);
    CHECK(ids(hits) == std::set<std::string>{"m1", "m2", "m3", "m4", "m5", "m6"});
}

TEST_CASE("hits preserve the rate away from the probe step-sizes") {
    const OscillatorParams unit{1.0, 0.0, 0.0};
    for (Observable obs : {Observable::MeanPosition, Observable::MeanVelocity}) {
        const double target = continuous_rate(obs, unit).coefficient();
        for (const SearchHit& hit : exact_preservation_search(obs)) {
            CHECK(hit.max_deviation <= 1e-10);
            const MethodDef m = hit.method();
            for (double h : {0.037, 0.42, 1.23}) {
                const LdpClassification cls = rate_function(m, h, obs, unit);
                REQUIRE(cls.applicable);
                CHECK(oracle::rel_err(cls.modified_rate.coefficient(), target) < 1e-10);
            }
        }
    }
}

TEST_CASE("hit files compile back to the same coefficients") {
    for (const SearchHit& hit : exact_preservation_search(Observable::MeanVelocity)) {
        const MethodFile file = hit.file();
        CHECK(file.name == hit.catalog_id);
        const MethodDef from_file = method_from_file(parse_method_file(format_method_file(file)));
        const MethodDef ref = find_method(hit.catalog_id);
        for (double h : {0.1, 0.9}) {
            const Coefficients a = evaluate(from_file, h);
            const Coefficients b = evaluate(ref, h);
            CHECK(a.a.a11 == doctest::Approx(b.a.a11).epsilon(1e-14));
            CHECK(a.a.a12 == doctest::Approx(b.a.a12).epsilon(1e-14));
            CHECK(a.a.a21 == doctest::Approx(b.a.a21).epsilon(1e-14));
            CHECK(a.a.a22 == doctest::Approx(b.a.a22).epsilon(1e-14));
            CHECK(a.b.x == doctest::Approx(b.b.x).epsilon(1e-14));
            CHECK(a.b.y == doctest::Approx(b.b.y).epsilon(1e-14));
        }
    }
}

TEST_CASE("a narrower grid finds a subset") {
    SearchConfig config;
    config.sigma_grid = {0.0};
    const auto hits = exact_preservation_search(Observable::MeanVelocity, config);
    CHECK(ids(hits) == std::set<std::string>{"m1", "m4"});
    config.d_grid = {0.0, 0.25};
    CHECK(exact_preservation_search(Observable::MeanVelocity, config).empty());
}
