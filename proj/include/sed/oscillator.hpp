#pragma once

// Radiation-damped harmonic oscillator driven by the vacuum field:
// closed-form spectral steady state, an order-reduced time-domain
// integrator, the commutator mode sum and the zero-point dispersions.

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sed/vacuum_field.hpp"
#include "sed/vec3.hpp"

namespace sed {

struct OscillatorParams {
    double charge = 1.0;
    double mass = 1.0;
    double natural_frequency = 1.0;
    double light_speed = 1.0;
    double hbar = 1.0;
    double radiation_tau = 0.0;  // 2 e^2 / (3 m c^3) when derived

    // Convenience: params with tau derived from (e, m, c).
    static OscillatorParams derived(double e, double m, double omega0, double c,
                                    double hbar);
};

double radiation_time_constant(double e, double m, double c);

// chi(omega) = 1 / (omega0^2 - omega^2 + i tau omega^3); conjugate branch is
// the complex conjugate.
std::complex<double> susceptibility(double omega, const OscillatorParams& p);

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec3> positions;
    std::vector<Vec3> momenta;
};

void write_trajectory_csv(const Trajectory& tr, std::ostream& out);
void write_trajectory_csv(const Trajectory& tr, const std::string& path);

// Forced steady state of the order-reduced equation, mode by mode.
// position:  -sqrt(2) (e/m) f Re[e^{i phi} chi]  per mode,
// momentum:  +sqrt(2) e f (omega0^2/omega) Im[e^{i phi} chi]  per mode,
// with phi = omega t - q.r - arg(a).
class SteadyStateSolution {
  public:
    SteadyStateSolution(const ModeSet& ms, const OscillatorParams& p,
                       const Vec3& site = {});

    Vec3 position(double t) const;
    Vec3 velocity(double t) const;
    Vec3 momentum(double t) const;  // the omega0^2-weighted spectral form

    Trajectory sample(const std::vector<double>& times) const;

  private:
    const ModeSet* modes_;
    OscillatorParams params_;
    Vec3 site_;
};

Trajectory steady_state_solution(const ModeSet& ms, const OscillatorParams& p,
                                 const std::vector<double>& times,
                                 const Vec3& site = {});

struct IntegrationResult {
    Trajectory trajectory;
    bool accuracy_warning = false;  // dt * omega0 > 0.1
};

using DriveFunction = std::function<Vec3(double t)>;

// RK4 on the order-reduced equation  x'' + tau w0^2 x' + w0^2 x = -(e/m) E(t).
// Momenta recorded as m v.
IntegrationResult integrate_equation_of_motion(const OscillatorParams& p,
                                               const DriveFunction& drive,
                                               const Vec3& x0, const Vec3& v0,
                                               double dt, double t_final);

// Discrete version of the commutator sum: per mode
//   2 (omega0^2/omega) (e^2/m) f^2 <I^2> / |D|^2,  <I^2> = 1/3
// (diagonal components averaged over j). Continuum limit is hbar.
double commutator_mode_sum(const OscillatorParams& p, const ModeSet& ms);

struct DispersionSummary {
    double x2 = 0.0;
    double p2 = 0.0;
    double product = 0.0;
    std::size_t n_modes = 0;
    std::size_t n_realizations = 0;
    std::uint64_t seed = 0;
};

// Exact phase-ensemble second moments for one mode set (per-component,
// isotropically averaged).
DispersionSummary oscillator_dispersions(const OscillatorParams& p, const ModeSet& ms);

// Monte Carlo over independent mode-set realizations: x(t), p(t) sampled from
// the closed form at random times. Deterministic for fixed seed, any worker
// count.
DispersionSummary ensemble_dispersions(const OscillatorParams& p,
                                       const ModeSamplingConfig& cfg,
                                       std::size_t n_realizations,
                                       std::size_t times_per_realization,
                                       double time_span, unsigned workers);

void write_dispersions_json(const DispersionSummary& d, const std::string& path);

}  // namespace sed
