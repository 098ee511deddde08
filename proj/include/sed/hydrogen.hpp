#pragma once

// Uncertainty-based total-energy functional for an H-like atom and its
// ground-state minimization.

#include <iosfwd>
#include <string>
#include <vector>

#include "sed/units.hpp"

namespace sed {

struct AtomSpec {
    int z = 1;
    UnitSystem units = natural_units();
};

// <E> = (1/2m)[<P_r>^2 + <L>^2/<r>^2] + (1/2m)[<dP_r^2> + <dL^2>/<r>^2] - Z e^2/<r>
double total_energy_expectation(double p_r_mean, double l_mean, double dp_r2,
                                double dl2, double r_mean, const AtomSpec& atom);

// Ground-state functional E(r) = hbar^2/(2 m r^2) - Z e^2 / r, assembled from
// the minimal dispersions hbar^2/(4 r^2) and 3 hbar^2/4.
double ground_energy_functional(double r, const AtomSpec& atom);

struct GroundState {
    double r_min = 0.0;
    double e_min = 0.0;
    double r_min_numeric = 0.0;  // bracketing-minimizer cross-check
    double e_min_numeric = 0.0;
};

GroundState minimize_ground_energy(const AtomSpec& atom);

void write_ground_sweep_csv(const UnitSystem& units, const std::vector<int>& z_values,
                            std::ostream& out);
void write_ground_sweep_csv(const UnitSystem& units, const std::vector<int>& z_values,
                            const std::string& path);

}  // namespace sed
