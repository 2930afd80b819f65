#include <doctest.h>

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "ldposc/rng.hpp"

using namespace ldposc::rng;

TEST_CASE("splitmix64 reference outputs") {
    // Sequential SplitMix64 seeded with 0 starts with these words.
    Stream s(0);
    CHECK(s.next_u64() == 0xe220a8397b1dcdafULL);
    CHECK(s.next_u64() == 0x6e789e6aa1b965f4ULL);
    CHECK(s.next_u64() == 0x06c45d188009454fULL);
    CHECK(s.position() == 3);
}

TEST_CASE("stream outputs are addressable by counter") {
    Stream s(12345);
    std::vector<std::uint64_t> seq;
    for (int k = 0; k < 10; ++k) seq.push_back(s.next_u64());
    for (std::uint64_t k = 0; k < 10; ++k) CHECK(seq[k] == mix64(12345 + kGolden * (k + 1)));
}

TEST_CASE("derived keys depend only on seed and index") {
    CHECK(derive_key(7, 3) == derive_key(7, 3));
    CHECK(derive_key(7, 3) != derive_key(7, 4));
    CHECK(derive_key(7, 3) != derive_key(8, 3));
    CHECK(Stream::for_index(7, 3).key() == derive_key(7, 3));
}

TEST_CASE("uniforms lie in the open unit interval with the right mean") {
    Stream s(derive_key(1, 0));
    double sum = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        const double u = s.next_uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("normal quantile agrees with boost") {
    const boost::math::normal_distribution<double> normal;
    for (double p : {1e-300, 1e-100, 1e-20, 1e-8, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.97575,
                     0.999, 1.0 - 1e-12}) {
        const double expected = boost::math::quantile(normal, p);
        CHECK(normal_quantile(p) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK(std::isinf(normal_quantile(0.0)));
    CHECK(normal_quantile(0.0) < 0.0);
    CHECK(std::isinf(normal_quantile(1.0)));
    CHECK(std::isnan(normal_quantile(1.5)));
    CHECK(std::isnan(normal_quantile(-0.1)));
}

TEST_CASE("normal draws have unit variance and vanishing skew") {
    Stream s(derive_key(99, 1));
    const int n = 400000;
    double m1 = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double z = s.next_normal();
        m1 += z;
        m2 += z * z;
        m3 += z * z * z;
    }
    m1 /= n;
    m2 /= n;
    m3 /= n;
    CHECK(std::abs(m1) < 5.0 / std::sqrt(n));
    CHECK(std::abs(m2 - 1.0) < 5.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(m3) < 5.0 * std::sqrt(15.0 / n));
}
