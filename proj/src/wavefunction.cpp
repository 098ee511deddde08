#include "sed/wavefunction.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "sed/csv.hpp"

namespace sed {

std::vector<double> WavefunctionGrid::density() const {
    std::vector<double> rho(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) rho[i] = std::norm(values[i]);
    return rho;
}

double norm_squared(const WavefunctionGrid& psi) {
    return integrate(psi.grid, psi.density());
}

void normalize(WavefunctionGrid& psi) {
    const double n2 = norm_squared(psi);
    if (!(n2 > 0.0)) throw std::domain_error("cannot normalize a null wavefunction");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : psi.values) v *= s;
}

double hamiltonian_expectation(const WavefunctionGrid& psi, const Potential& pot,
                               double m, double hbar) {
    const Grid1D& g = psi.grid;
    std::vector<double> re(g.n), im(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        re[i] = psi.values[i].real();
        im[i] = psi.values[i].imag();
    }
    const std::vector<double> dre = gradient4(g, re);
    const std::vector<double> dim = gradient4(g, im);
    const std::vector<double> w = quadrature_weights(g);
    double total = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        if (w[i] == 0.0) continue;
        const double grad2 = dre[i] * dre[i] + dim[i] * dim[i];
        total += w[i] * (hbar * hbar / (2.0 * m) * grad2 +
                         pot(g.x(i)) * std::norm(psi.values[i]));
    }
    return total;
}

WavefunctionGrid harmonic_ground_state(const Grid1D& g, double m, double omega,
                                       double hbar, double t) {
    WavefunctionGrid psi;
    psi.grid = g;
    psi.time = t;
    psi.values.resize(g.n);
    const double a = m * omega / (2.0 * hbar);
    const double phase = -0.5 * omega * t;  // E0 t / hbar
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        psi.values[i] = std::polar(std::exp(-a * x * x), phase);
    }
    normalize(psi);
    return psi;
}

WavefunctionGrid coherent_state(const Grid1D& g, double m, double omega, double hbar,
                                double displacement, double t) {
    WavefunctionGrid psi;
    psi.grid = g;
    psi.time = t;
    psi.values.resize(g.n);
    const double xc = displacement * std::cos(omega * t);
    const double pc = -m * omega * displacement * std::sin(omega * t);
    const double theta = 0.5 * hbar * omega * t + 0.5 * pc * xc;  // action phase
    const double a = m * omega / (2.0 * hbar);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        const double s1 = pc * x - theta;
        psi.values[i] = std::polar(std::exp(-a * (x - xc) * (x - xc)), s1 / hbar);
    }
    normalize(psi);
    return psi;
}

WavefunctionGrid plane_wave(const Grid1D& g, double k) {
    WavefunctionGrid psi;
    psi.grid = g;
    psi.values.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) psi.values[i] = std::polar(1.0, k * g.x(i));
    normalize(psi);
    return psi;
}

WavefunctionGrid hydrogen_1s(const Grid1D& g, double bohr_radius) {
    if (g.geometry != Geometry::Radial)
        throw std::invalid_argument("hydrogen_1s requires a radial grid");
    WavefunctionGrid psi;
    psi.grid = g;
    psi.values.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        psi.values[i] = std::exp(-g.x(i) / bohr_radius);
    normalize(psi);
    return psi;
}

void evolve_crank_nicolson(WavefunctionGrid& psi, const Potential& pot, double m,
                           double hbar, double dt, std::size_t steps) {
    const Grid1D& g = psi.grid;
    const std::size_t n = g.n;
    using cplx = std::complex<double>;
    const cplx ih = cplx(0.0, dt / (2.0 * hbar));
    const double kin = hbar * hbar / (2.0 * m * g.h * g.h);

    // H tridiagonal: diag = 2 kin + V, off = -kin.
    std::vector<cplx> diag(n), rhs(n), cp(n), dp(n);
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const double hd = 2.0 * kin + pot(g.x(i));
            diag[i] = 1.0 + ih * hd;
            cplx r = (1.0 - ih * hd) * psi.values[i];
            if (i > 0) r += ih * kin * psi.values[i - 1];
            if (i + 1 < n) r += ih * kin * psi.values[i + 1];
            rhs[i] = r;
        }
        // Thomas solve for (I + ih H) psi_new = rhs; off-diagonal of ih*H is -ih*kin.
        const cplx a = -ih * kin;
        cp[0] = a / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const cplx denom = diag[i] - a * cp[i - 1];
            cp[i] = a / denom;
            dp[i] = (rhs[i] - a * dp[i - 1]) / denom;
        }
        psi.values[n - 1] = dp[n - 1];
        for (std::size_t i = n - 1; i-- > 0;)
            psi.values[i] = dp[i] - cp[i] * psi.values[i + 1];
        psi.time += dt;
    }
}

void write_wavefunction_csv(const WavefunctionGrid& psi, std::ostream& out) {
    out << "x,re_psi,im_psi\n";
    for (std::size_t i = 0; i < psi.grid.n; ++i)
        csv::row(out, {psi.grid.x(i), psi.values[i].real(), psi.values[i].imag()});
}

void write_wavefunction_csv(const WavefunctionGrid& psi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_wavefunction_csv(psi, out);
}

}  // namespace sed
