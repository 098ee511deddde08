#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sed/grid.hpp"

namespace sed {

using Potential = std::function<double(double x)>;

struct WavefunctionGrid {
    Grid1D grid;
    std::vector<std::complex<double>> values;
    double time = 0.0;

    std::vector<double> density() const;  // |psi|^2
};

// Scales psi so that the quadrature of |psi|^2 equals 1.
void normalize(WavefunctionGrid& psi);

double norm_squared(const WavefunctionGrid& psi);

// <H> = integral of (hbar^2/2m) |psi'|^2 + V |psi|^2, with the O(h^4)
// derivative stencil.
double hamiltonian_expectation(const WavefunctionGrid& psi, const Potential& pot,
                               double m, double hbar);

// Analytic test states (all normalized on their grid).
WavefunctionGrid harmonic_ground_state(const Grid1D& g, double m, double omega,
                                       double hbar, double t = 0.0);
WavefunctionGrid coherent_state(const Grid1D& g, double m, double omega, double hbar,
                                double displacement, double t);
WavefunctionGrid plane_wave(const Grid1D& g, double k);
WavefunctionGrid hydrogen_1s(const Grid1D& g, double bohr_radius);

// Crank-Nicolson step on the full Hamiltonian, Dirichlet ends.
void evolve_crank_nicolson(WavefunctionGrid& psi, const Potential& pot, double m,
                           double hbar, double dt, std::size_t steps);

void write_wavefunction_csv(const WavefunctionGrid& psi, std::ostream& out);
void write_wavefunction_csv(const WavefunctionGrid& psi, const std::string& path);

}  // namespace sed
