#pragma once

// Mean/fluctuation dispersion algebra and the angular-momentum totals,
// including the hbar^2/4 zero-point addition the model predicts. The
// (l + 1/2)^2 total is reported as the model states it, next to the
// standard l(l+1) column; nothing is silently corrected.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

namespace sed {

struct DispersionReport {
    double mean = 0.0;
    double mean_square = 0.0;
    double fluctuation = 0.0;  // <delta^2> = mean_square - mean^2
};

DispersionReport mean_fluct_decompose(std::span<const double> samples);

struct UncertaintyCheck {
    double product = 0.0;
    double bound = 0.0;     // hbar^2 / 4
    bool minimal = false;   // product within tolerance of the bound
    bool violation = false; // product below the bound (inconsistent inputs)
};

UncertaintyCheck uncertainty_product_check(double dx2, double dp2, double hbar,
                                           double minimal_tolerance = 1e-9);

// Minimal radial-momentum dispersion hbar^2 / (4 <r^2>).
double minimal_radial_momentum_dispersion(double r2_mean, double hbar);

struct AngularMomentumReport {
    int l = 0;
    double lz_bar2 = 0.0;   // l^2 hbar^2
    double dlx2 = 0.0;      // l hbar^2 / 2
    double dly2 = 0.0;
    double dlz2 = 0.0;      // hbar^2 / 4
    double l2_total = 0.0;  // (l + 1/2)^2 hbar^2
    double l2_standard = 0.0;  // l (l + 1) hbar^2, for comparison
};

AngularMomentumReport angular_momentum_model_totals(int l, double hbar);

struct IsotropicDispersions {
    double dlx2 = 0.0;
    double dly2 = 0.0;
    double dlz2 = 0.0;
    double sum = 0.0;  // 3 hbar^2 / 4
};

IsotropicDispersions isotropic_ground_dispersions(double hbar);

void write_angular_momentum_table_csv(int l_max, double hbar, std::ostream& out);
void write_angular_momentum_table_csv(int l_max, double hbar, const std::string& path);

}  // namespace sed
