#include "sed/vacuum_field.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "sed/csv.hpp"
#include "sed/rng.hpp"

namespace sed {

namespace {

// Counter slots for per-mode draws.
enum : std::uint64_t {
    kSlotDirZ = 0,
    kSlotDirPhi = 1,
    kSlotPolAngle = 2,
    kSlotPhase = 3,
    kSlotBranch = 4,
    kSlotOmega = 5,
};

void validate(const ModeSamplingConfig& cfg) {
    if (!(cfg.omega_min > 0.0) || !(cfg.omega_min < cfg.omega_max))
        throw std::invalid_argument("mode sampling requires 0 < omega_min < omega_max");
    if (cfg.law == SamplingLaw::ResonanceStratified) {
        if (!(cfg.omega0 > 0.0) || !(cfg.linewidth > 0.0))
            throw std::invalid_argument("resonance-stratified sampling requires omega0 > 0 and linewidth > 0");
        if (cfg.uniform_mix < 0.0 || cfg.uniform_mix > 1.0)
            throw std::invalid_argument("uniform_mix must lie in [0, 1]");
    }
}

double cauchy_norm(const ModeSamplingConfig& cfg) {
    return std::atan((cfg.omega_max - cfg.omega0) / cfg.linewidth) -
           std::atan((cfg.omega_min - cfg.omega0) / cfg.linewidth);
}

double draw_omega(const ModeSamplingConfig& cfg, std::uint64_t i) {
    const double u = rng::u01(cfg.seed, i, kSlotOmega);
    if (cfg.law == SamplingLaw::Uniform)
        return cfg.omega_min + u * (cfg.omega_max - cfg.omega_min);
    const double branch = rng::u01(cfg.seed, i, kSlotBranch);
    if (branch < cfg.uniform_mix)
        return cfg.omega_min + u * (cfg.omega_max - cfg.omega_min);
    // Truncated Cauchy about omega0 by inverse CDF.
    const double a = std::atan((cfg.omega_min - cfg.omega0) / cfg.linewidth);
    const double b = std::atan((cfg.omega_max - cfg.omega0) / cfg.linewidth);
    return cfg.omega0 + cfg.linewidth * std::tan(a + u * (b - a));
}

}  // namespace

double sampling_pdf(const ModeSamplingConfig& cfg, double omega) {
    const double width = cfg.omega_max - cfg.omega_min;
    if (omega < cfg.omega_min || omega > cfg.omega_max) return 0.0;
    if (cfg.law == SamplingLaw::Uniform) return 1.0 / width;
    const double t = (omega - cfg.omega0) / cfg.linewidth;
    const double cauchy = 1.0 / (cfg.linewidth * cauchy_norm(cfg) * (1.0 + t * t));
    return cfg.uniform_mix / width + (1.0 - cfg.uniform_mix) * cauchy;
}

ModeSet build_mode_set(const ModeSamplingConfig& cfg) {
    validate(cfg);
    ModeSet ms;
    ms.omega_min = cfg.omega_min;
    ms.omega_max = cfg.omega_max;
    ms.seed = cfg.seed;
    ms.hbar = cfg.hbar;
    ms.light_speed = cfg.light_speed;
    ms.modes.reserve(cfg.count);

    const double c3 = std::pow(cfg.light_speed, 3);
    // Representative volume: the one for which the physical mode count in
    // [omega_min, omega_max] equals the sampled count.
    ms.normalization_volume =
        cfg.count > 0
            ? 3.0 * M_PI * M_PI * c3 * static_cast<double>(cfg.count) /
                  (std::pow(cfg.omega_max, 3) - std::pow(cfg.omega_min, 3))
            : 0.0;

    for (std::uint64_t i = 0; i < cfg.count; ++i) {
        Mode mode;
        const double omega = draw_omega(cfg, i);
        const double cz = 1.0 - 2.0 * rng::u01(cfg.seed, i, kSlotDirZ);
        const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
        const double phi = 2.0 * M_PI * rng::u01(cfg.seed, i, kSlotDirPhi);
        const Vec3 qhat{sz * std::cos(phi), sz * std::sin(phi), cz};
        mode.frequency = omega;
        mode.wavevector = (omega / cfg.light_speed) * qhat;

        // Orthonormal transverse frame, then a uniformly random polarization in it.
        const Vec3 ref = std::abs(qhat.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        const Vec3 e1 = normalized(cross(ref, qhat));
        const Vec3 e2 = cross(qhat, e1);
        const double alpha = 2.0 * M_PI * rng::u01(cfg.seed, i, kSlotPolAngle);
        mode.polarization = std::cos(alpha) * e1 + std::sin(alpha) * e2;

        const double theta = 2.0 * M_PI * rng::u01(cfg.seed, i, kSlotPhase);
        mode.amplitude = std::polar(1.0 / std::sqrt(2.0), theta);

        // field_scale^2 = 2 hbar omega^3 / (pi c^3 N p(omega)): the continuum
        // density of states over the sampling density, folded into the
        // standard per-mode coefficient.
        const double p = sampling_pdf(cfg, omega);
        mode.field_scale = std::sqrt(2.0 * cfg.hbar * std::pow(omega, 3) /
                                     (M_PI * c3 * static_cast<double>(cfg.count) * p));
        ms.modes.push_back(mode);
    }
    return ms;
}

ModeSet make_single_mode(double omega, const Vec3& direction, double pol_angle,
                         double phase, double field_scale, double hbar,
                         double light_speed) {
    if (!(omega > 0.0)) throw std::invalid_argument("mode frequency must be positive");
    ModeSet ms;
    ms.omega_min = omega;
    ms.omega_max = omega;
    ms.hbar = hbar;
    ms.light_speed = light_speed;
    ms.normalization_volume = 2.0 * M_PI * hbar * omega / (field_scale * field_scale);
    Mode mode;
    const Vec3 qhat = normalized(direction);
    mode.frequency = omega;
    mode.wavevector = (omega / light_speed) * qhat;
    const Vec3 ref = std::abs(qhat.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    const Vec3 e1 = normalized(cross(ref, qhat));
    const Vec3 e2 = cross(qhat, e1);
    mode.polarization = std::cos(pol_angle) * e1 + std::sin(pol_angle) * e2;
    mode.amplitude = std::polar(1.0 / std::sqrt(2.0), phase);
    mode.field_scale = field_scale;
    ms.modes.push_back(mode);
    return ms;
}

namespace {

void check_finite(const Vec3& r, double t) {
    if (!std::isfinite(r.x) || !std::isfinite(r.y) || !std::isfinite(r.z) || !std::isfinite(t))
        throw std::domain_error("field evaluation requires finite (r, t)");
}

}  // namespace

Vec3 electric_field_at(const ModeSet& ms, const Vec3& r, double t) {
    check_finite(r, t);
    Vec3 field;
    const double root2 = std::sqrt(2.0);
    for (const Mode& mode : ms.modes) {
        const double phase = mode.frequency * t - dot(mode.wavevector, r) -
                             std::arg(mode.amplitude);
        field += (root2 * mode.field_scale * std::cos(phase)) * mode.polarization;
    }
    return field;
}

Vec3 vector_potential_at(const ModeSet& ms, const Vec3& r, double t) {
    check_finite(r, t);
    // E = -(1/c) dA/dt with A per mode at amplitude (c/omega) * field_scale.
    Vec3 pot;
    const double root2 = std::sqrt(2.0);
    for (const Mode& mode : ms.modes) {
        const double phase = mode.frequency * t - dot(mode.wavevector, r) -
                             std::arg(mode.amplitude);
        const double amp = root2 * mode.field_scale * ms.light_speed / mode.frequency;
        pot += (-amp * std::sin(phase)) * mode.polarization;
    }
    return pot;
}

void write_modes_csv(const ModeSet& ms, std::ostream& out) {
    out << "qx,qy,qz,omega,ex,ey,ez,re_a,im_a\n";
    for (const Mode& m : ms.modes) {
        csv::row(out, {m.wavevector.x, m.wavevector.y, m.wavevector.z, m.frequency,
                       m.polarization.x, m.polarization.y, m.polarization.z,
                       m.amplitude.real(), m.amplitude.imag()});
    }
}

void write_modes_csv(const ModeSet& ms, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_modes_csv(ms, out);
}

}  // namespace sed
