// Acceptance gate: one pass/fail line per release criterion, each checked at
// its pinned tolerance.  Criteria 1-11 drive the library directly; criterion
// 12 shells out to the CLI (path in argv[1]) and byte-compares output trees.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sed/hydrogen.hpp"
#include "sed/nelson.hpp"
#include "sed/oscillator.hpp"
#include "sed/uncertainty.hpp"
#include "sed/vacuum_field.hpp"

namespace fs = std::filesystem;
using namespace sed;

namespace {

int g_failures = 0;

void criterion(int id, bool ok, const std::string& name, const std::string& detail) {
    if (!ok) ++g_failures;
    std::printf("criterion %2d: %s  %s  [%s]\n", id, ok ? "PASS" : "FAIL",
                name.c_str(), detail.c_str());
    std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool close_rel(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

// ---- independent quadrature oracle ----------------------------------------

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double m = 0.5 * (a + b);
    return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 60);
}

// Continuum limit of the commutator frequency sum for a Lorentzian response.
double commutator_quadrature(double omega0, double tau, double hbar, double wmin,
                             double wmax) {
    const auto integrand = [&](double w) {
        const double re = omega0 * omega0 - w * w;
        const double im = tau * w * w * w;
        return (2.0 * hbar * tau / M_PI) * omega0 * omega0 * w * w /
               (re * re + im * im);
    };
    // Split at the resonance so the adaptive rule sees the narrow peak.
    return integrate_adaptive(integrand, wmin, omega0, 1e-12) +
           integrate_adaptive(integrand, omega0, wmax, 1e-12);
}

OscillatorParams natural_params(double tau) {
    OscillatorParams p;
    p.natural_frequency = 1.0;
    p.radiation_tau = tau;
    // Coupling consistent with the damping: tau = 2 e^2 / (3 m c^3).
    p.charge = std::sqrt(1.5 * tau);
    return p;
}

ModeSamplingConfig resonance_cfg(std::size_t count, double omega0, double tau,
                                 std::uint64_t seed) {
    ModeSamplingConfig cfg;
    cfg.count = count;
    cfg.omega_min = 0.02;
    cfg.omega_max = 50.0;
    cfg.law = SamplingLaw::ResonanceStratified;
    cfg.omega0 = omega0;
    cfg.linewidth = 0.5 * tau * omega0 * omega0;
    cfg.uniform_mix = 0.1;
    cfg.seed = seed;
    return cfg;
}

const Potential harmonic = [](double x) { return 0.5 * x * x; };  // m = omega = 1

// ---- criteria --------------------------------------------------------------

void check_commutator() {
    const auto t0 = std::chrono::steady_clock::now();
    const double tau = 1e-6;  // tau * omega0 = 1e-6
    const OscillatorParams p = natural_params(tau);
    const double oracle = commutator_quadrature(1.0, tau, 1.0, 0.02, 50.0);
    const ModeSet ms = build_mode_set(resonance_cfg(20000, 1.0, tau, 1));
    const double k = commutator_mode_sum(p, ms);
    const double dt = seconds_since(t0);
    const bool ok = close_rel(k, 1.0, 0.02) && close_rel(oracle, 1.0, 5e-3) &&
                    dt < 60.0;
    criterion(1, ok, "commutator mode sum recovers hbar (2%, quadrature oracle)",
              fmt("sum=%.5f oracle=%.6f %.1fs", k, oracle, dt));
}

void check_dispersions() {
    const auto t0 = std::chrono::steady_clock::now();
    const double tau = 1e-6;
    const OscillatorParams p = natural_params(tau);
    const DispersionSummary d =
        ensemble_dispersions(p, resonance_cfg(20000, 1.0, tau, 3), 400, 32, 256.0, 1);
    const double dt = seconds_since(t0);
    const bool ok = d.n_realizations >= 200 && close_rel(d.x2, 0.5, 0.10) &&
                    close_rel(d.p2, 0.5, 0.10) && close_rel(d.product, 0.25, 0.20) &&
                    dt < 300.0;
    criterion(2, ok, "zero-point dispersions (10%/10%, product 20%)",
              fmt("x2=%.4f p2=%.4f prod=%.4f n=%zu %.1fs", d.x2, d.p2, d.product,
                  d.n_realizations, dt));
}

void check_steady_state_vs_ode() {
    const double tau = 1e-2;
    const OscillatorParams p = natural_params(tau);
    const ModeSet ms = make_single_mode(0.9, {0, 0, 1}, 0.0, 0.4, 0.05);
    const SteadyStateSolution ss(ms, p);
    const auto drive = [&](double t) { return electric_field_at(ms, {0, 0, 0}, t); };
    const double t_settle = 20.0 / (tau * 1.0);  // 20 damping times
    const IntegrationResult r = integrate_equation_of_motion(
        p, drive, ss.position(0.0), ss.velocity(0.0), 5e-3, t_settle + 20.0);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < r.trajectory.times.size(); ++i) {
        const double t = r.trajectory.times[i];
        if (t < t_settle) continue;
        num += norm2(r.trajectory.positions[i] - ss.position(t));
        den += norm2(ss.position(t));
    }
    const double l2 = std::sqrt(num / den);
    criterion(3, den > 0.0 && l2 < 1e-3,
              "single-mode steady state matches the integrator (L2 < 1e-3)",
              fmt("rel_l2=%.2e", l2));
}

void check_momentum_forms() {
    const double tau = 1e-4;
    const OscillatorParams p = natural_params(tau);
    const ModeSet ms = make_single_mode(1.1, {1, 0, 0}, 0.7, 1.2, 0.1);
    const SteadyStateSolution ss(ms, p);
    // Relative L2 deviation over one period (pointwise ratios are singular at
    // the momentum's zero crossings).
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double t = 2.0 * M_PI / 1.1 * i / 200.0;
        const Vec3 canonical = p.mass * ss.velocity(t) -
                               (p.charge / p.light_speed) *
                                   vector_potential_at(ms, {0, 0, 0}, t);
        const Vec3 spectral = ss.momentum(t);
        num += norm2(spectral - canonical);
        den += norm2(spectral);
    }
    const double rel = std::sqrt(num / den);
    criterion(4, rel < 0.01,
              "spectral momentum equals m dx/dt - (e/c)A within 1%",
              fmt("rel_l2=%.2e", rel));
}

void check_nelson_stationarity() {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid1D g = make_grid(-8.0, 8.0, 4001);
    const WavefunctionGrid psi = harmonic_ground_state(g, 1.0, 1.0, 1.0);
    const NodePolicy nodes{true, 1e-12};
    const VelocityFields vel =
        velocities_from_actions(actions_from_wavefunction(psi, 1.0, nodes), 1.0);
    WalkerEnsemble w = make_gaussian_ensemble(100000, 0.0, std::sqrt(0.5), 1);
    EvolveConfig cfg;
    cfg.dt = 1e-3;             // 1e-3 / omega
    cfg.steps = 10000;         // T = 10 / omega
    cfg.x_min = -8.0;
    cfg.x_max = 8.0;
    evolve_ensemble(w, vel, cfg);
    const double var = ensemble_variance(w);
    const double l1 = histogram_l1_distance(
        w, [](double x) { return 0.5 * (1.0 + std::erf(x)); }, -4.0, 4.0, 50);
    const double dt = seconds_since(t0);
    const bool ok = close_rel(var, 0.5, 0.03) && l1 < 0.05 && dt < 60.0;
    criterion(5, ok, "ground-state walker ensemble stays stationary (3%, L1 < 0.05)",
              fmt("var=%.4f l1=%.4f %.1fs", var, l1, dt));
}

void check_energy_split() {
    const Grid1D g = make_grid(-7.0, 7.0, 4001);
    const WavefunctionGrid psi = harmonic_ground_state(g, 1.0, 1.0, 1.0);
    const EnergySplit es = energy_split(psi, harmonic, 1.0, 1.0);
    const double h_exp = hamiltonian_expectation(psi, harmonic, 1.0, 1.0);

    const Grid1D gr = make_grid(0.0, 16.0, 4001, Geometry::Radial);
    const WavefunctionGrid psi_h = hydrogen_1s(gr, 1.0);
    const Potential coulomb = [](double r) { return r > 0.0 ? -1.0 / r : 0.0; };
    const EnergySplit eh = energy_split(psi_h, coulomb, 1.0, 1.0);

    const bool ok = std::abs(es.t_current) < 1e-8 &&
                    std::abs(es.t_osmotic - 0.25) < 1e-8 &&
                    std::abs(es.v_pot - 0.25) < 1e-8 &&
                    std::abs(es.total - h_exp) < 1e-8 &&
                    std::abs(eh.total + 0.5) < 1e-8;
    criterion(6, ok, "energy splits of analytic states (1e-8)",
              fmt("harm=(%.1e,%.8f,%.8f) |tot-<H>|=%.1e hyd_tot=%.9f", es.t_current,
                  es.t_osmotic, es.v_pot, std::abs(es.total - h_exp), eh.total));
}

void check_madelung_residuals() {
    const Grid1D g = make_grid(-7.0, 7.0, 2001);
    const double dt = 1e-6;
    const WavefunctionGrid prev = harmonic_ground_state(g, 1.0, 1.0, 1.0, -dt);
    const WavefunctionGrid now = harmonic_ground_state(g, 1.0, 1.0, 1.0, 0.0);
    const WavefunctionGrid next = harmonic_ground_state(g, 1.0, 1.0, 1.0, dt);
    const MadelungReport rep = madelung_residuals(prev, now, next, harmonic, 1.0, 1.0);
    const bool ok = rep.phase_diffusion.linf < 1e-8 &&
                    rep.hamilton_jacobi.linf < 1e-8 &&
                    rep.local_energy.linf > 0.1 &&  // pointwise variant is nonzero
                    std::abs(rep.local_energy.rho_weighted_mean) < 1e-6;
    criterion(7, ok,
              "Madelung pair exact (1e-8); pointwise variant zero only in the mean",
              fmt("pd=%.1e hj=%.1e local_linf=%.2f mean=%.1e",
                  rep.phase_diffusion.linf, rep.hamilton_jacobi.linf,
                  rep.local_energy.linf, rep.local_energy.rho_weighted_mean));
}

void check_integral_identity() {
    const Grid1D g = make_grid(-8.0, 8.0, 3201);
    std::vector<double> s2(g.n);
    for (std::size_t i = 0; i < g.n; ++i) s2[i] = 0.5 * g.x(i) * g.x(i);
    const IntegralIdentityReport rep = integral_identity_check(g, s2, 1.0);
    // Pointwise the integrands differ; the max |1 - 2 x^2| = 127 at the domain
    // edge is regression-locked.
    const bool ok = close_rel(rep.lhs, rep.rhs, 1e-8) && !rep.surface_term_warning &&
                    rep.pointwise_residual_max > 0.0 &&
                    close_rel(rep.pointwise_residual_max, 127.0, 1e-6);
    criterion(8, ok, "log-amplitude integral identity (1e-8, pointwise locked)",
              fmt("lhs=%.9f rhs=%.9f ptwise=%.3f", rep.lhs, rep.rhs,
                  rep.pointwise_residual_max));
}

void check_continuity() {
    const double dt = 1e-6;
    const auto report = [&](std::size_t n) {
        const Grid1D g = make_grid(-6.0, 6.0, n);
        const double t = 0.4;
        const WavefunctionGrid prev = coherent_state(g, 1.0, 1.0, 1.0, 1.0, t - dt);
        const WavefunctionGrid now = coherent_state(g, 1.0, 1.0, 1.0, 1.0, t);
        const WavefunctionGrid next = coherent_state(g, 1.0, 1.0, 1.0, 1.0, t + dt);
        return continuity_residual(prev, now, next, 1.0, 1.0);
    };
    const ContinuityReport coarse = report(501);
    const ContinuityReport fine = report(1001);
    const double order = std::log2(coarse.mean_velocity.l2 / fine.mean_velocity.l2);
    const bool ok = order >= 1.9 && coarse.identity_linf < 1e-12 &&
                    fine.identity_linf < 1e-12;
    criterion(9, ok, "continuity residual refines at order >= 1.9; identity < 1e-12",
              fmt("order=%.2f id=%.1e", order,
                  std::max(coarse.identity_linf, fine.identity_linf)));
}

void check_angular_momentum() {
    const double expected[4] = {0.25, 2.25, 6.25, 12.25};
    bool ok = true;
    for (int l = 0; l <= 3; ++l)
        ok = ok && angular_momentum_model_totals(l, 1.0).l2_total == expected[l];
    const IsotropicDispersions iso = isotropic_ground_dispersions(1.0);
    ok = ok && iso.sum == 0.75;
    criterion(10, ok, "angular-momentum totals (l + 1/2)^2 and isotropic sum 3/4, exact",
              fmt("l2/hbar2=%.2f,%.2f,%.2f,%.2f sum=%.2f",
                  angular_momentum_model_totals(0, 1.0).l2_total,
                  angular_momentum_model_totals(1, 1.0).l2_total,
                  angular_momentum_model_totals(2, 1.0).l2_total,
                  angular_momentum_model_totals(3, 1.0).l2_total, iso.sum));
}

void check_hlike_ground() {
    AtomSpec natural;  // Z = 1, natural units
    const GroundState g = minimize_ground_energy(natural);
    AtomSpec cgs;
    cgs.units = gaussian_cgs_units();
    const GroundState gc = minimize_ground_energy(cgs);
    const double e_ev = gc.e_min / cgs.units.erg_per_ev;
    const bool ok = close_rel(g.r_min_numeric, g.r_min, 1e-10) &&
                    close_rel(g.e_min_numeric, g.e_min, 1e-10) &&
                    close_rel(e_ev, -13.606, 1e-3);
    criterion(11, ok, "H-like ground state: numeric minimum 1e-10, -13.606 eV 0.1%",
              fmt("r=%.12f E=%.12f E_cgs=%.4f eV", g.r_min_numeric, g.e_min_numeric,
                  e_ev));
}

// ---- determinism via the CLI -----------------------------------------------

// summary.json legitimately differs across worker counts in its timing and in
// the echoed configuration (which contains the workers key); strip those lines
// before comparing.
std::string comparable_content(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream all;
    all << in.rdbuf();
    if (file.filename() != "summary.json") return all.str();
    std::istringstream lines(all.str());
    std::string out, line;
    while (std::getline(lines, line)) {
        if (line.find("\"wall_time_s\"") != std::string::npos) continue;
        if (line.find("\"workers\"") != std::string::npos) continue;
        if (line.find("\"config\"") != std::string::npos) continue;
        out += line;
        out += '\n';
    }
    return out;
}

bool trees_match(const fs::path& a, const fs::path& b, std::string& why) {
    std::vector<fs::path> names;
    for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename());
    for (const auto& e : fs::directory_iterator(b)) {
        if (!fs::exists(a / e.path().filename())) {
            why = "extra file " + e.path().filename().string();
            return false;
        }
    }
    for (const auto& n : names) {
        if (!fs::exists(b / n)) {
            why = "missing file " + n.string();
            return false;
        }
        if (comparable_content(a / n) != comparable_content(b / n)) {
            why = n.string() + " differs";
            return false;
        }
    }
    return true;
}

void check_determinism(const std::string& cli) {
    struct Case {
        const char* experiment;
        const char* overrides;  // desk-scale sizes so the whole matrix stays fast
    };
    const Case cases[] = {
        {"vacuum-sample", "[vacuum_field]\ncount = 2000\n"},
        {"oscillator-run",
         "[vacuum_field]\ncount = 2000\n[oscillator]\nn_realizations = 50\n"
         "times_per_realization = 8\ntime_span = 64\nt_final = 8\n"},
        {"commutator-sum", "[vacuum_field]\ncount = 20000\n"},
        {"nelson-run",
         "[nelson]\nn_walkers = 5000\nt_final = 0.5\ngrid_points = 1001\n"},
        {"hlike-ground", ""},
    };
    const fs::path root = fs::temp_directory_path() / "sed_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    bool ok = true;
    std::string detail;
    for (const Case& c : cases) {
        for (unsigned workers : {1u, 8u}) {
            const fs::path cfg = root / (std::string(c.experiment) + "-w" +
                                         std::to_string(workers) + ".ini");
            std::ofstream f(cfg);
            f << "[run]\nexperiment = " << c.experiment << "\nworkers = " << workers
              << "\n" << c.overrides;
            f.close();
            const fs::path out = root / (std::string(c.experiment) + "-w" +
                                         std::to_string(workers));
            const std::string cmd = "\"" + cli + "\" " + c.experiment + " --config " +
                                    cfg.string() + " --seed 7 --out " + out.string() +
                                    " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                detail = std::string(c.experiment) + " run failed";
            }
        }
        std::string why;
        const fs::path a = root / (std::string(c.experiment) + "-w1");
        const fs::path b = root / (std::string(c.experiment) + "-w8");
        if (ok && !trees_match(a, b, why)) {
            ok = false;
            detail = std::string(c.experiment) + ": " + why;
        }
        if (!ok) break;
    }
    if (ok) detail = "5 experiments, workers {1,8}, byte-identical";
    criterion(12, ok, "same seed, worker counts {1,8}: byte-identical outputs", detail);
    fs::remove_all(root);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 2;
    }
    check_commutator();
    check_dispersions();
    check_steady_state_vs_ode();
    check_momentum_forms();
    check_nelson_stationarity();
    check_energy_split();
    check_madelung_residuals();
    check_integral_identity();
    check_continuity();
    check_angular_momentum();
    check_hlike_ground();
    check_determinism(argv[1]);
    std::printf("%s: %d of 12 criteria passed\n", g_failures == 0 ? "OK" : "FAILED",
                12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
