#include "sed/uncertainty.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "sed/csv.hpp"

namespace sed {

DispersionReport mean_fluct_decompose(std::span<const double> samples) {
    if (samples.empty())
        throw std::domain_error("mean_fluct_decompose requires a nonempty sample list");
    DispersionReport r;
    const auto n = static_cast<double>(samples.size());
    for (double s : samples) {
        r.mean += s;
        r.mean_square += s * s;
    }
    r.mean /= n;
    r.mean_square /= n;
    r.fluctuation = r.mean_square - r.mean * r.mean;
    return r;
}

UncertaintyCheck uncertainty_product_check(double dx2, double dp2, double hbar,
                                           double minimal_tolerance) {
    if (dx2 < 0.0 || dp2 < 0.0)
        throw std::domain_error("dispersions must be nonnegative");
    UncertaintyCheck c;
    c.product = dx2 * dp2;
    c.bound = hbar * hbar / 4.0;
    c.violation = c.product < c.bound * (1.0 - minimal_tolerance);
    c.minimal = !c.violation && std::abs(c.product - c.bound) <= c.bound * minimal_tolerance;
    return c;
}

double minimal_radial_momentum_dispersion(double r2_mean, double hbar) {
    if (!(r2_mean > 0.0)) throw std::domain_error("<r^2> must be positive");
    return hbar * hbar / (4.0 * r2_mean);
}

AngularMomentumReport angular_momentum_model_totals(int l, double hbar) {
    if (l < 0) throw std::domain_error("l must be nonnegative");
    const double h2 = hbar * hbar;
    const double lf = static_cast<double>(l);
    AngularMomentumReport r;
    r.l = l;
    r.lz_bar2 = lf * lf * h2;
    r.dlx2 = r.dly2 = 0.5 * lf * h2;  // <dL^2> = Lz_bar hbar / 2 with Lz_bar = l hbar
    r.dlz2 = 0.25 * h2;
    r.l2_total = r.lz_bar2 + r.dlx2 + r.dly2 + r.dlz2;  // = (l + 1/2)^2 h2
    r.l2_standard = lf * (lf + 1.0) * h2;
    return r;
}

IsotropicDispersions isotropic_ground_dispersions(double hbar) {
    const double q = hbar * hbar / 4.0;
    return {q, q, q, 3.0 * q};
}

void write_angular_momentum_table_csv(int l_max, double hbar, std::ostream& out) {
    out << "l,model_L2_over_hbar2,standard_L2_over_hbar2,delta\n";
    const double h2 = hbar * hbar;
    for (int l = 0; l <= l_max; ++l) {
        const AngularMomentumReport r = angular_momentum_model_totals(l, hbar);
        csv::row(out, {static_cast<double>(l), r.l2_total / h2, r.l2_standard / h2,
                       (r.l2_total - r.l2_standard) / h2});
    }
}

void write_angular_momentum_table_csv(int l_max, double hbar, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_angular_momentum_table_csv(l_max, hbar, out);
}

}  // namespace sed
