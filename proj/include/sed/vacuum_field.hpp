#pragma once

// Random-phase realization of the zero-point field as a finite mode sum.
//
// Each sampled mode stands for a band of continuum vacuum modes: its
// field_scale carries sqrt(2*pi*hbar*omega / V_eff) where the effective
// volume absorbs the importance weight of the sampling law, so that
// mode sums converge to the continuum limit for any admissible law.
// The complex amplitude has fixed modulus 1/sqrt(2) and a uniform random
// phase; the phase-ensemble mean-square field of a single mode is then
// exactly field_scale^2 (the symmetrized vacuum value).

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sed/vec3.hpp"

namespace sed {

struct Mode {
    Vec3 wavevector;              // q, 1/length
    double frequency = 0.0;       // omega = c |q|
    Vec3 polarization;            // unit vector, transverse to q
    std::complex<double> amplitude;  // modulus 1/sqrt(2), random phase
    double field_scale = 0.0;     // per-mode field coefficient
};

enum class SamplingLaw { Uniform, ResonanceStratified };

struct ModeSamplingConfig {
    std::size_t count = 0;
    double omega_min = 0.0;
    double omega_max = 0.0;
    SamplingLaw law = SamplingLaw::Uniform;
    double omega0 = 0.0;       // stratified: line center
    double linewidth = 0.0;    // stratified: Lorentzian scale
    double uniform_mix = 0.1;  // stratified: mass of the uniform floor
    std::uint64_t seed = 0;
    double hbar = 1.0;
    double light_speed = 1.0;
};

struct ModeSet {
    std::vector<Mode> modes;
    double normalization_volume = 0.0;  // V = L^3, representative value
    double omega_min = 0.0;
    double omega_max = 0.0;
    std::uint64_t seed = 0;
    double hbar = 1.0;
    double light_speed = 1.0;
};

// Probability density of the sampling law at omega (normalized on the cutoffs).
double sampling_pdf(const ModeSamplingConfig& cfg, double omega);

ModeSet build_mode_set(const ModeSamplingConfig& cfg);

// Single explicit mode, mostly for tests and narrow-band studies.
ModeSet make_single_mode(double omega, const Vec3& direction, double pol_angle,
                         double phase, double field_scale, double hbar = 1.0,
                         double light_speed = 1.0);

Vec3 electric_field_at(const ModeSet& ms, const Vec3& r, double t);
Vec3 vector_potential_at(const ModeSet& ms, const Vec3& r, double t);

void write_modes_csv(const ModeSet& ms, std::ostream& out);
void write_modes_csv(const ModeSet& ms, const std::string& path);

}  // namespace sed
