#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "sed/rng.hpp"

using namespace sed;

TEST_CASE("draws are pure functions of (seed, stream, counter)") {
    CHECK(rng::u01(1, 2, 3) == rng::u01(1, 2, 3));
    CHECK(rng::normal(7, 0, 9) == rng::normal(7, 0, 9));
    CHECK(rng::u01(1, 2, 3) != rng::u01(1, 2, 4));
    CHECK(rng::u01(1, 2, 3) != rng::u01(1, 3, 3));
    CHECK(rng::u01(1, 2, 3) != rng::u01(2, 2, 3));
}

TEST_CASE("u01 lies in [0, 1) with the right first two moments") {
    const std::size_t n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng::u01(42, 0, i);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("normal has zero mean, unit variance, small excess kurtosis") {
    const std::size_t n = 200000;
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng::normal(99, 5, i);
        s1 += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
    CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("normal_pair first component equals normal") {
    for (std::uint64_t c = 0; c < 50; ++c) {
        double a = 0.0, b = 0.0;
        rng::normal_pair(11, 3, c, a, b);
        CHECK(a == rng::normal(11, 3, c));
        CHECK(std::isfinite(b));
    }
}

TEST_CASE("normal_pair components are uncorrelated") {
    const std::size_t n = 100000;
    double sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = 0.0, b = 0.0;
        rng::normal_pair(5, 0, i, a, b);
        sab += a * b;
    }
    CHECK(std::abs(sab / n) < 0.02);
}

TEST_CASE("derive_seed produces distinct sub-seeds") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(rng::derive_seed(123, i));
    CHECK(seen.size() == 10000);
    CHECK(rng::derive_seed(123, 0) != rng::derive_seed(124, 0));
}
