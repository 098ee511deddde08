#include "sed/hydrogen.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "sed/csv.hpp"

namespace sed {

namespace {

void validate(const AtomSpec& atom) {
    if (atom.z < 1) throw std::domain_error("nuclear charge Z must be >= 1");
    if (!(atom.units.e > 0.0) || !(atom.units.m > 0.0) || !(atom.units.hbar > 0.0))
        throw std::domain_error("atomic constants must be positive");
}

// Golden-section search on a unimodal function.
double golden_minimize(double lo, double hi, const std::function<double(double)>& f,
                       double rel_tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while ((b - a) > rel_tol * (std::abs(c) + std::abs(d))) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double total_energy_expectation(double p_r_mean, double l_mean, double dp_r2,
                                double dl2, double r_mean, const AtomSpec& atom) {
    validate(atom);
    if (!(r_mean > 0.0)) throw std::domain_error("<r> must be positive");
    if (dp_r2 < 0.0 || dl2 < 0.0) throw std::domain_error("dispersions must be nonnegative");
    const double m = atom.units.m;
    const double e2 = atom.units.e * atom.units.e;
    const double r2 = r_mean * r_mean;
    return (p_r_mean * p_r_mean + l_mean * l_mean / r2) / (2.0 * m) +
           (dp_r2 + dl2 / r2) / (2.0 * m) - static_cast<double>(atom.z) * e2 / r_mean;
}

double ground_energy_functional(double r, const AtomSpec& atom) {
    validate(atom);
    if (!(r > 0.0)) throw std::domain_error("r must be positive");
    const double hbar2 = atom.units.hbar * atom.units.hbar;
    const double e2 = atom.units.e * atom.units.e;
    return 0.5 * hbar2 / (atom.units.m * r * r) - static_cast<double>(atom.z) * e2 / r;
}

GroundState minimize_ground_energy(const AtomSpec& atom) {
    validate(atom);
    const double hbar2 = atom.units.hbar * atom.units.hbar;
    const double e2 = atom.units.e * atom.units.e;
    const double z = static_cast<double>(atom.z);

    GroundState g;
    g.r_min = hbar2 / (atom.units.m * z * e2);
    g.e_min = -z * z * atom.units.m * e2 * e2 / (2.0 * hbar2);

    // Bracket scaled by the analytic radius; the functional is unimodal there.
    g.r_min_numeric = golden_minimize(
        1e-3 * g.r_min, 1e3 * g.r_min,
        [&](double r) { return ground_energy_functional(r, atom); }, 1e-12);
    // Golden section resolves the position only to ~sqrt(eps); polish with
    // Newton on E'(r) = -hbar^2/(m r^3) + Z e^2/r^2.
    for (int it = 0; it < 8; ++it) {
        const double r = g.r_min_numeric;
        const double d1 = -hbar2 / (atom.units.m * r * r * r) + z * e2 / (r * r);
        const double d2 =
            3.0 * hbar2 / (atom.units.m * r * r * r * r) - 2.0 * z * e2 / (r * r * r);
        if (d2 <= 0.0) break;
        g.r_min_numeric = r - d1 / d2;
    }
    g.e_min_numeric = ground_energy_functional(g.r_min_numeric, atom);
    return g;
}

void write_ground_sweep_csv(const UnitSystem& units, const std::vector<int>& z_values,
                            std::ostream& out) {
    out << "Z,r_min,E_min,E_min_eV\n";
    for (int z : z_values) {
        const GroundState g = minimize_ground_energy({z, units});
        csv::row(out, {static_cast<double>(z), g.r_min, g.e_min,
                       g.e_min / units.erg_per_ev});
    }
}

void write_ground_sweep_csv(const UnitSystem& units, const std::vector<int>& z_values,
                            const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_ground_sweep_csv(units, z_values, out);
}

}  // namespace sed
