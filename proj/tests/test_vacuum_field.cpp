#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "sed/grid.hpp"
#include "sed/rng.hpp"
#include "sed/vacuum_field.hpp"

using namespace sed;

namespace {

ModeSamplingConfig stratified_cfg(std::size_t count, std::uint64_t seed) {
    ModeSamplingConfig cfg;
    cfg.count = count;
    cfg.omega_min = 0.02;
    cfg.omega_max = 50.0;
    cfg.law = SamplingLaw::ResonanceStratified;
    cfg.omega0 = 1.0;
    cfg.linewidth = 5e-7;
    cfg.uniform_mix = 0.1;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("mode-set construction is deterministic in the seed") {
    const ModeSet a = build_mode_set(stratified_cfg(200, 7));
    const ModeSet b = build_mode_set(stratified_cfg(200, 7));
    const ModeSet c = build_mode_set(stratified_cfg(200, 8));
    REQUIRE(a.modes.size() == 200);
    bool identical = true, differs = false;
    for (std::size_t i = 0; i < a.modes.size(); ++i) {
        identical = identical && a.modes[i].frequency == b.modes[i].frequency &&
                    a.modes[i].amplitude == b.modes[i].amplitude &&
                    a.modes[i].wavevector.x == b.modes[i].wavevector.x;
        differs = differs || a.modes[i].frequency != c.modes[i].frequency;
    }
    CHECK(identical);
    CHECK(differs);
}

TEST_CASE("modes are transverse with unit polarization and fixed amplitude modulus") {
    const ModeSet ms = build_mode_set(stratified_cfg(2000, 3));
    double max_dot = 0.0;
    for (const Mode& m : ms.modes) {
        max_dot = std::max(max_dot,
                           std::abs(dot(m.polarization, normalized(m.wavevector))));
        CHECK(norm(m.polarization) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(m.amplitude) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(m.frequency == doctest::Approx(norm(m.wavevector)));
        CHECK(m.frequency >= 0.02);
        CHECK(m.frequency <= 50.0);
    }
    CHECK(max_dot < 1e-12);
}

TEST_CASE("propagation directions are isotropic") {
    const std::size_t n = 20000;
    const ModeSet ms = build_mode_set(stratified_cfg(n, 11));
    Vec3 mean;
    double z2 = 0.0;
    for (const Mode& m : ms.modes) {
        const Vec3 d = normalized(m.wavevector);
        mean += d;
        z2 += d.z * d.z;
    }
    mean = (1.0 / static_cast<double>(n)) * mean;
    const double mc = 4.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(mean.x) < mc);
    CHECK(std::abs(mean.y) < mc);
    CHECK(std::abs(mean.z) < mc);
    CHECK(z2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("phase-ensemble mean-square field of one mode is field_scale^2") {
    const double f = 0.8;
    double sum = 0.0;
    const std::size_t n = 10000;
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = 2.0 * M_PI * rng::u01(77, 0, i);
        const ModeSet ms = make_single_mode(2.0, {0, 0, 1}, 0.3, phase, f);
        sum += norm2(electric_field_at(ms, {0, 0, 0}, 0.0));
    }
    CHECK(sum / n == doctest::Approx(f * f).epsilon(0.03));
}

TEST_CASE("sampling pdf is normalized on the cutoffs") {
    for (SamplingLaw law : {SamplingLaw::Uniform, SamplingLaw::ResonanceStratified}) {
        ModeSamplingConfig cfg = stratified_cfg(1, 0);
        cfg.law = law;
        cfg.linewidth = 0.01;  // resolvable scale for the quadrature
        const Grid1D g = make_grid(cfg.omega_min, cfg.omega_max, 200001);
        std::vector<double> p(g.n);
        for (std::size_t i = 0; i < g.n; ++i) p[i] = sampling_pdf(cfg, g.x(i));
        CHECK(integrate(g, p) == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("electric field is minus the time derivative of A over c") {
    const ModeSet ms = build_mode_set(stratified_cfg(50, 21));
    const Vec3 r{0.3, -0.2, 0.7};
    const double t = 1.3;
    const double h = 1e-6;
    // Fourth-order central difference of A.
    const Vec3 a1 = vector_potential_at(ms, r, t - 2 * h);
    const Vec3 a2 = vector_potential_at(ms, r, t - h);
    const Vec3 a3 = vector_potential_at(ms, r, t + h);
    const Vec3 a4 = vector_potential_at(ms, r, t + 2 * h);
    const Vec3 dadt = (1.0 / (12.0 * h)) * (a1 - 8.0 * a2 + 8.0 * a3 - a4);
    const Vec3 e = electric_field_at(ms, r, t);
    const Vec3 expected = -1.0 * dadt;  // c = 1
    CHECK(norm(e - expected) < 1e-6 * std::max(1.0, norm(e)));
}

TEST_CASE("fields are linear in the mode content") {
    const ModeSet one = make_single_mode(1.5, {1, 0, 0}, 0.2, 0.4, 0.7);
    const ModeSet two = make_single_mode(2.5, {0, 1, 0}, 1.1, 2.0, 0.3);
    ModeSet both = one;
    both.modes.push_back(two.modes[0]);
    const Vec3 r{0.1, 0.2, 0.3};
    const double t = 0.9;
    const Vec3 sum = electric_field_at(one, r, t) + electric_field_at(two, r, t);
    CHECK(norm(electric_field_at(both, r, t) - sum) < 1e-14);
}

TEST_CASE("empty mode set gives zero fields") {
    ModeSamplingConfig cfg = stratified_cfg(0, 0);
    const ModeSet ms = build_mode_set(cfg);
    CHECK(ms.modes.empty());
    CHECK(norm(electric_field_at(ms, {1, 2, 3}, 4.0)) == 0.0);
    CHECK(norm(vector_potential_at(ms, {1, 2, 3}, 4.0)) == 0.0);
}

TEST_CASE("invalid sampling configurations are rejected") {
    ModeSamplingConfig cfg = stratified_cfg(10, 0);
    cfg.omega_min = -1.0;
    CHECK_THROWS(build_mode_set(cfg));
    cfg = stratified_cfg(10, 0);
    cfg.omega_max = cfg.omega_min;
    CHECK_THROWS(build_mode_set(cfg));
    cfg = stratified_cfg(10, 0);
    cfg.linewidth = 0.0;
    CHECK_THROWS(build_mode_set(cfg));
    cfg = stratified_cfg(10, 0);
    cfg.uniform_mix = 1.5;
    CHECK_THROWS(build_mode_set(cfg));
}

TEST_CASE("non-finite evaluation points are rejected") {
    const ModeSet ms = make_single_mode(1.0, {0, 0, 1}, 0.0, 0.0, 1.0);
    CHECK_THROWS(electric_field_at(ms, {std::nan(""), 0, 0}, 0.0));
    CHECK_THROWS(vector_potential_at(ms, {0, 0, 0}, std::nan("")));
}

TEST_CASE("modes CSV has a header and one row per mode") {
    const ModeSet ms = build_mode_set(stratified_cfg(17, 5));
    std::ostringstream out;
    write_modes_csv(ms, out);
    const std::string text = out.str();
    CHECK(text.rfind("qx,qy,qz,omega,", 0) == 0);
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 18);
}
