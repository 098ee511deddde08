#pragma once

// Stochastic-mechanics layer: action fields S1/S2 of psi, current and osmotic
// velocities, forward/backward drift decomposition, walker-ensemble SDE
// evolution, and the continuity / Madelung / integral-identity / energy-split
// checks.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sed/grid.hpp"
#include "sed/wavefunction.hpp"

namespace sed {

struct ActionFields {
    Grid1D grid;
    std::vector<double> s1;  // hbar * unwrapped phase
    std::vector<double> s2;  // -hbar * ln |psi|
    std::vector<std::uint8_t> valid;  // 0 where a node was masked
    double time = 0.0;
};

struct VelocityFields {
    Grid1D grid;
    std::vector<double> current;  // V = grad S1 / m
    std::vector<double> osmotic;  // U = grad S2 / m
};

struct NodePolicy {
    bool mask = false;              // mask nodes instead of throwing
    double relative_threshold = 1e-12;  // |psi| below max|psi| * this is a node
};

ActionFields actions_from_wavefunction(const WavefunctionGrid& psi, double hbar,
                                       const NodePolicy& nodes = {});
WavefunctionGrid wavefunction_from_actions(const ActionFields& a, double hbar);

VelocityFields velocities_from_actions(const ActionFields& a, double m);

struct ForwardBackward {
    std::vector<double> forward;   // V+ = V + U
    std::vector<double> backward;  // V- = V - U
};

ForwardBackward forward_backward_velocities(const VelocityFields& v);

// ---- walker ensemble -------------------------------------------------------

enum class BoundaryPolicy { Clip, Reflect, Error };

struct WalkerEnsemble {
    std::vector<double> positions;
    std::uint64_t seed = 0;
    std::uint64_t step = 0;
};

WalkerEnsemble make_gaussian_ensemble(std::size_t n, double mean, double sigma,
                                      std::uint64_t seed);

using DriftFunction = std::function<double(double x)>;

struct EvolveConfig {
    double dt = 1e-3;
    std::size_t steps = 0;
    double hbar = 1.0;
    double mass = 1.0;
    double x_min = 0.0;
    double x_max = 0.0;  // x_min == x_max disables the boundary check
    BoundaryPolicy boundary = BoundaryPolicy::Clip;
    unsigned workers = 1;
};

// Forward drift b = V - U; per-step noise variance (hbar/m) dt. Randomness is
// a pure function of (seed, walker, step), so results do not depend on the
// worker count.
void evolve_ensemble(WalkerEnsemble& w, const DriftFunction& drift,
                     const EvolveConfig& cfg);

// Fast path: tabulated drift b = V - U interpolated inline.
void evolve_ensemble(WalkerEnsemble& w, const VelocityFields& v,
                     const EvolveConfig& cfg);

// Linear interpolation of grid velocities into a drift callback (b = V - U).
DriftFunction drift_from_fields(const VelocityFields& v);

double ensemble_variance(const WalkerEnsemble& w);

// L1 distance between the walker histogram and a reference CDF.
double histogram_l1_distance(const WalkerEnsemble& w,
                             const std::function<double(double)>& cdf,
                             double lo, double hi, std::size_t bins);

void write_walkers_csv(const WalkerEnsemble& w, std::ostream& out);
void write_walkers_csv(const WalkerEnsemble& w, const std::string& path);

// ---- residual checks -------------------------------------------------------

struct ResidualReport {
    std::vector<double> residual;
    double l2 = 0.0;    // quadrature L2 norm
    double linf = 0.0;
    double rho_weighted_mean = 0.0;
    double grid_h = 0.0;
    double dt = 0.0;
};

void write_residual_json(const ResidualReport& r, const std::string& path);

struct ContinuityReport {
    ResidualReport mean_velocity;            // d rho/dt + div(V rho)
    ResidualReport complex_velocity;           // with V+ against its right-hand side
    double identity_linf = 0.0;   // div((V+U)rho) - div(V rho) - div(U rho), pure algebra
};

ContinuityReport continuity_residual(const WavefunctionGrid& prev,
                                     const WavefunctionGrid& now,
                                     const WavefunctionGrid& next, double m,
                                     double hbar, const NodePolicy& nodes = {});

struct MadelungReport {
    ResidualReport phase_diffusion;  // imaginary-part equation
    ResidualReport hamilton_jacobi;  // real-part (exact modified Hamilton-Jacobi)
    ResidualReport local_energy;  // the pointwise variant; nonzero in general
};

MadelungReport madelung_residuals(const WavefunctionGrid& prev,
                                  const WavefunctionGrid& now,
                                  const WavefunctionGrid& next,
                                  const Potential& pot, double m, double hbar,
                                  const NodePolicy& nodes = {});

struct IntegralIdentityReport {
    double lhs = 0.0;  // integral of lap(S2) exp(-2 S2/hbar)
    double rhs = 0.0;  // (2/hbar) integral of (grad S2)^2 exp(-2 S2/hbar)
    double pointwise_residual_max = 0.0;  // max |lap S2 - (2/hbar)(grad S2)^2|
    double boundary_flux = 0.0;
    bool surface_term_warning = false;
};

IntegralIdentityReport integral_identity_check(const Grid1D& g,
                                               const std::vector<double>& s2,
                                               double hbar);

struct EnergySplit {
    double t_current = 0.0;
    double t_osmotic = 0.0;
    double v_pot = 0.0;
    double total = 0.0;
};

EnergySplit energy_split(const WavefunctionGrid& psi, const Potential& pot,
                         double m, double hbar, const NodePolicy& nodes = {});

}  // namespace sed
