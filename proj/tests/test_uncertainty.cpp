#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "sed/rng.hpp"
#include "sed/uncertainty.hpp"

using namespace sed;

TEST_CASE("mean/fluctuation decomposition satisfies <A^2> = <A>^2 + <dA^2>") {
    std::vector<double> samples;
    for (std::size_t i = 0; i < 5000; ++i)
        samples.push_back(1.7 + 0.4 * rng::normal(31, 0, i));
    const DispersionReport r = mean_fluct_decompose(samples);
    CHECK(r.mean_square == doctest::Approx(r.mean * r.mean + r.fluctuation).epsilon(1e-12));
    CHECK(r.mean == doctest::Approx(1.7).epsilon(0.02));
    CHECK(r.fluctuation == doctest::Approx(0.16).epsilon(0.1));
}

TEST_CASE("constant samples have zero fluctuation") {
    const std::vector<double> samples(100, 2.5);
    const DispersionReport r = mean_fluct_decompose(samples);
    CHECK(r.mean == doctest::Approx(2.5));
    CHECK(std::abs(r.fluctuation) < 1e-12);
}

TEST_CASE("uncertainty product check flags the minimal and violating cases") {
    const double hbar = 1.0;
    SUBCASE("minimal") {
        const UncertaintyCheck c = uncertainty_product_check(0.5, 0.5, hbar);
        CHECK(c.product == doctest::Approx(0.25));
        CHECK(c.bound == doctest::Approx(0.25));
        CHECK(c.minimal);
        CHECK_FALSE(c.violation);
    }
    SUBCASE("above the bound") {
        const UncertaintyCheck c = uncertainty_product_check(1.0, 0.5, hbar);
        CHECK_FALSE(c.minimal);
        CHECK_FALSE(c.violation);
    }
    SUBCASE("below the bound (inconsistent inputs)") {
        const UncertaintyCheck c = uncertainty_product_check(0.1, 0.1, hbar);
        CHECK(c.violation);
    }
}

TEST_CASE("minimal radial momentum dispersion is hbar^2 / (4 <r^2>)") {
    CHECK(minimal_radial_momentum_dispersion(1.0, 1.0) == doctest::Approx(0.25));
    CHECK(minimal_radial_momentum_dispersion(2.0, 1.0) == doctest::Approx(0.125));
    CHECK(minimal_radial_momentum_dispersion(1.0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("angular momentum totals for l = 0..3") {
    const double expected[] = {0.25, 2.25, 6.25, 12.25};
    const double standard[] = {0.0, 2.0, 6.0, 12.0};
    for (int l = 0; l <= 3; ++l) {
        const AngularMomentumReport r = angular_momentum_model_totals(l, 1.0);
        CHECK(r.l2_total == doctest::Approx(expected[l]).epsilon(1e-15));
        CHECK(r.l2_standard == doctest::Approx(standard[l]).epsilon(1e-15));
    }
}

TEST_CASE("total is exactly (l + 1/2)^2 hbar^2 and decomposes into its parts") {
    const double hbar = 1.37;
    const double h2 = hbar * hbar;
    for (int l = 0; l <= 100; ++l) {
        const AngularMomentumReport r = angular_momentum_model_totals(l, hbar);
        CHECK(r.lz_bar2 == doctest::Approx(double(l) * l * h2));
        CHECK(r.dlx2 == doctest::Approx(0.5 * l * h2));
        CHECK(r.dly2 == doctest::Approx(0.5 * l * h2));
        CHECK(r.dlz2 == doctest::Approx(0.25 * h2));
        const double total = r.lz_bar2 + r.dlx2 + r.dly2 + r.dlz2;
        CHECK(r.l2_total == doctest::Approx(total).epsilon(1e-14));
        CHECK(r.l2_total == doctest::Approx((l + 0.5) * (l + 0.5) * h2).epsilon(1e-14));
        CHECK(r.l2_total - r.l2_standard == doctest::Approx(0.25 * h2).epsilon(1e-10));
    }
}

TEST_CASE("isotropic ground-state dispersions sum to 3 hbar^2 / 4") {
    const IsotropicDispersions d = isotropic_ground_dispersions(1.0);
    CHECK(d.dlx2 == doctest::Approx(0.25));
    CHECK(d.dly2 == doctest::Approx(0.25));
    CHECK(d.dlz2 == doctest::Approx(0.25));
    CHECK(d.sum == doctest::Approx(0.75));
    CHECK(isotropic_ground_dispersions(2.0).sum == doctest::Approx(3.0));
}

TEST_CASE("angular momentum table CSV has one row per l and a header") {
    std::ostringstream out;
    write_angular_momentum_table_csv(3, 1.0, out);
    const std::string text = out.str();
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 5);  // header + l = 0..3
    CHECK(text.find("l,") == 0);
    CHECK(text.find("6.25") != std::string::npos);
}
