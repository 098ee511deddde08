#include "sed/nelson.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sed/csv.hpp"
#include "sed/rng.hpp"
#include "json.hpp"

namespace sed {

namespace {

double wrap_to_pi(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

// Shift `field` by multiples of 2 pi hbar so it agrees with `anchor` at the
// first valid index; keeps time differences of S1 on one phase branch.
void align_branch(std::vector<double>& field, const std::vector<double>& anchor,
                  double hbar, const std::vector<std::uint8_t>& valid) {
    std::size_t i0 = 0;
    while (i0 < valid.size() && !valid[i0]) ++i0;
    if (i0 == valid.size()) return;
    const double k = std::round((field[i0] - anchor[i0]) / (2.0 * M_PI * hbar));
    if (k != 0.0)
        for (double& v : field) v -= k * 2.0 * M_PI * hbar;
}

ResidualReport make_report(const Grid1D& g, std::vector<double> res,
                           const std::vector<double>& rho,
                           const std::vector<std::uint8_t>& valid, double dt) {
    ResidualReport r;
    const std::vector<double> w = quadrature_weights(g);
    double l2 = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        if (!valid[i]) { res[i] = 0.0; continue; }
        l2 += w[i] * res[i] * res[i];
        mean += w[i] * res[i] * rho[i];
        r.linf = std::max(r.linf, std::abs(res[i]));
    }
    r.l2 = std::sqrt(l2);
    r.rho_weighted_mean = mean;
    r.grid_h = g.h;
    r.dt = dt;
    r.residual = std::move(res);
    return r;
}

}  // namespace

ActionFields actions_from_wavefunction(const WavefunctionGrid& psi, double hbar,
                                       const NodePolicy& nodes) {
    ActionFields a;
    a.grid = psi.grid;
    a.time = psi.time;
    a.s1.resize(psi.grid.n);
    a.s2.resize(psi.grid.n);
    a.valid.assign(psi.grid.n, 1);

    double amax = 0.0;
    for (const auto& v : psi.values) amax = std::max(amax, std::abs(v));
    const double floor = amax * nodes.relative_threshold;

    double phase = 0.0, prev_arg = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < psi.grid.n; ++i) {
        const double mag = std::abs(psi.values[i]);
        if (mag <= floor) {
            if (!nodes.mask)
                throw std::domain_error("wavefunction node at grid index " +
                                        std::to_string(i) + "; enable node masking");
            a.valid[i] = 0;
            a.s1[i] = 0.0;
            a.s2[i] = 0.0;
            have_prev = false;  // restart the phase branch after a node
            continue;
        }
        const double arg = std::arg(psi.values[i]);
        if (!have_prev) {
            phase = arg;
            have_prev = true;
        } else {
            phase += wrap_to_pi(arg - prev_arg);
        }
        prev_arg = arg;
        a.s1[i] = hbar * phase;
        a.s2[i] = -hbar * std::log(mag);
    }
    return a;
}

WavefunctionGrid wavefunction_from_actions(const ActionFields& a, double hbar) {
    WavefunctionGrid psi;
    psi.grid = a.grid;
    psi.time = a.time;
    psi.values.resize(a.grid.n);
    for (std::size_t i = 0; i < a.grid.n; ++i) {
        if (!a.valid[i]) { psi.values[i] = 0.0; continue; }
        if (!std::isfinite(a.s1[i]) || !std::isfinite(a.s2[i]))
            throw std::domain_error("non-finite action field");
        psi.values[i] = std::polar(std::exp(-a.s2[i] / hbar), a.s1[i] / hbar);
    }
    normalize(psi);
    return psi;
}

VelocityFields velocities_from_actions(const ActionFields& a, double m) {
    VelocityFields v;
    v.grid = a.grid;
    v.current = gradient(a.grid, a.s1);
    v.osmotic = gradient(a.grid, a.s2);
    for (auto& x : v.current) x /= m;
    for (auto& x : v.osmotic) x /= m;
    return v;
}

ForwardBackward forward_backward_velocities(const VelocityFields& v) {
    ForwardBackward fb;
    fb.forward.resize(v.current.size());
    fb.backward.resize(v.current.size());
    for (std::size_t i = 0; i < v.current.size(); ++i) {
        fb.forward[i] = v.current[i] + v.osmotic[i];
        fb.backward[i] = v.current[i] - v.osmotic[i];
    }
    return fb;
}

// ---- walker ensemble -------------------------------------------------------

WalkerEnsemble make_gaussian_ensemble(std::size_t n, double mean, double sigma,
                                      std::uint64_t seed) {
    WalkerEnsemble w;
    w.seed = seed;
    w.positions.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        w.positions[i] = mean + sigma * rng::normal(seed, 0x494E495400ULL, i);
    return w;
}

namespace {

// Core Euler-Maruyama loop, templated so grid-based drifts inline.
// Noise at absolute step t is component (t & 1) of the Box-Muller pair
// at counter t >> 1, a pure function of (seed, walker, t).
template <typename Drift>
void evolve_walkers_impl(WalkerEnsemble& w, const Drift& drift,
                         const EvolveConfig& cfg) {
    const double noise_sigma = std::sqrt(cfg.hbar / cfg.mass * cfg.dt);
    const bool bounded = cfg.x_max > cfg.x_min;
    const std::uint64_t step0 = w.step;

    const auto evolve_walker = [&](std::size_t i) {
        double x = w.positions[i];
        const std::uint64_t stream = static_cast<std::uint64_t>(i);
        double pair0 = 0.0, pair1 = 0.0;
        std::uint64_t pair_counter = ~std::uint64_t{0};
        for (std::size_t s = 0; s < cfg.steps; ++s) {
            double xi = 0.0;
            if (noise_sigma != 0.0) {
                const std::uint64_t t = step0 + s;
                if ((t >> 1) != pair_counter) {
                    pair_counter = t >> 1;
                    rng::normal_pair(w.seed, stream, pair_counter, pair0, pair1);
                }
                xi = (t & 1) == 0 ? pair0 : pair1;
            }
            x += drift(x) * cfg.dt + noise_sigma * xi;
            if (bounded && (x < cfg.x_min || x > cfg.x_max)) {
                switch (cfg.boundary) {
                    case BoundaryPolicy::Clip:
                        x = std::clamp(x, cfg.x_min, cfg.x_max);
                        break;
                    case BoundaryPolicy::Reflect:
                        x = x < cfg.x_min ? 2.0 * cfg.x_min - x : 2.0 * cfg.x_max - x;
                        x = std::clamp(x, cfg.x_min, cfg.x_max);
                        break;
                    case BoundaryPolicy::Error:
                        throw std::range_error("walker escaped the grid");
                }
            }
        }
        w.positions[i] = x;
    };

    const std::size_t n = w.positions.size();
    if (cfg.workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) evolve_walker(i);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mu;
        const std::size_t chunk = (n + cfg.workers - 1) / cfg.workers;
        for (unsigned t = 0; t < cfg.workers; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) evolve_walker(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mu);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }
    w.step += cfg.steps;
}

// Inline-able linear interpolation of the tabulated forward drift.
// Must evaluate exactly like the closure from drift_from_fields so the two
// evolve_ensemble overloads produce bitwise-identical walkers.
struct TabulatedDrift {
    double x0, h, x_last;
    std::size_t n;
    const double* b;
    double operator()(double x) const {
        if (x <= x0) return b[0];
        if (x >= x_last) return b[n - 1];
        const double s = (x - x0) / h;
        const auto i = static_cast<std::size_t>(s);
        const double f = s - static_cast<double>(i);
        return (1.0 - f) * b[i] + f * b[i + 1];
    }
};

}  // namespace

void evolve_ensemble(WalkerEnsemble& w, const DriftFunction& drift,
                     const EvolveConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve_ensemble requires dt > 0");
    evolve_walkers_impl(w, drift, cfg);
}

void evolve_ensemble(WalkerEnsemble& w, const VelocityFields& v,
                     const EvolveConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve_ensemble requires dt > 0");
    std::vector<double> b(v.grid.n);
    for (std::size_t i = 0; i < v.grid.n; ++i) b[i] = v.current[i] - v.osmotic[i];
    const TabulatedDrift drift{v.grid.x0, v.grid.h, v.grid.xmax(), v.grid.n, b.data()};
    evolve_walkers_impl(w, drift, cfg);
}

DriftFunction drift_from_fields(const VelocityFields& v) {
    const Grid1D g = v.grid;
    std::vector<double> b(g.n);
    for (std::size_t i = 0; i < g.n; ++i) b[i] = v.current[i] - v.osmotic[i];
    return [g, b = std::move(b)](double x) {
        if (x <= g.x0) return b.front();
        if (x >= g.xmax()) return b.back();
        const double s = (x - g.x0) / g.h;
        const auto i = static_cast<std::size_t>(s);
        const double f = s - static_cast<double>(i);
        return (1.0 - f) * b[i] + f * b[i + 1];
    };
}

double ensemble_variance(const WalkerEnsemble& w) {
    const auto n = static_cast<double>(w.positions.size());
    double mean = 0.0;
    for (double x : w.positions) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : w.positions) var += (x - mean) * (x - mean);
    return var / n;
}

double histogram_l1_distance(const WalkerEnsemble& w,
                             const std::function<double(double)>& cdf,
                             double lo, double hi, std::size_t bins) {
    std::vector<double> counts(bins + 1, 0.0);  // last bucket: out of range
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double x : w.positions) {
        if (x < lo || x >= hi) { counts[bins] += 1.0; continue; }
        counts[static_cast<std::size_t>((x - lo) / width)] += 1.0;
    }
    const auto n = static_cast<double>(w.positions.size());
    double l1 = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        const double ref = cdf(lo + width * static_cast<double>(b + 1)) -
                           cdf(lo + width * static_cast<double>(b));
        l1 += std::abs(counts[b] / n - ref);
    }
    l1 += std::abs(counts[bins] / n - (1.0 - (cdf(hi) - cdf(lo))));
    return l1;
}

void write_walkers_csv(const WalkerEnsemble& w, std::ostream& out) {
    out << "walker_id,x\n";
    for (std::size_t i = 0; i < w.positions.size(); ++i)
        out << i << ',' << csv::num(w.positions[i]) << '\n';
}

void write_walkers_csv(const WalkerEnsemble& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_walkers_csv(w, out);
}

// ---- residual checks -------------------------------------------------------

void write_residual_json(const ResidualReport& r, const std::string& path) {
    nlohmann::ordered_json j;
    j["l2"] = r.l2;
    j["linf"] = r.linf;
    j["rho_weighted_mean"] = r.rho_weighted_mean;
    j["grid_h"] = r.grid_h;
    j["dt"] = r.dt;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

ContinuityReport continuity_residual(const WavefunctionGrid& prev,
                                     const WavefunctionGrid& now,
                                     const WavefunctionGrid& next, double m,
                                     double hbar, const NodePolicy& nodes) {
    if (!prev.grid.same_as(now.grid) || !next.grid.same_as(now.grid))
        throw std::invalid_argument("continuity_residual: time slices on different grids");
    const Grid1D& g = now.grid;
    const double dt = 0.5 * (next.time - prev.time);
    if (!(dt > 0.0)) throw std::invalid_argument("time slices must be ordered");

    const std::vector<double> rho_prev = prev.density();
    const std::vector<double> rho = now.density();
    const std::vector<double> rho_next = next.density();

    const ActionFields a = actions_from_wavefunction(now, hbar, nodes);
    const VelocityFields vel = velocities_from_actions(a, m);

    std::vector<double> drho_dt(g.n), v_rho(g.n), vp_rho(g.n), u_rho(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        drho_dt[i] = (rho_next[i] - rho_prev[i]) / (2.0 * dt);
        v_rho[i] = vel.current[i] * rho[i];
        vp_rho[i] = (vel.current[i] + vel.osmotic[i]) * rho[i];
        u_rho[i] = vel.osmotic[i] * rho[i];  // (1/m) grad S2 e^{-2 S2/hbar}
    }
    const std::vector<double> div_v_rho = gradient(g, v_rho);
    const std::vector<double> div_vp_rho = gradient(g, vp_rho);
    const std::vector<double> rhs_osmotic = gradient(g, u_rho);

    std::vector<double> res_mean(g.n), res_complex(g.n);
    double identity_linf = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        res_mean[i] = drho_dt[i] + div_v_rho[i];
        res_complex[i] = drho_dt[i] + div_vp_rho[i] - rhs_osmotic[i];
        identity_linf = std::max(identity_linf,
                                 std::abs(div_vp_rho[i] - div_v_rho[i] - rhs_osmotic[i]));
    }

    ContinuityReport rep;
    rep.mean_velocity = make_report(g, std::move(res_mean), rho, a.valid, dt);
    rep.complex_velocity = make_report(g, std::move(res_complex), rho, a.valid, dt);
    rep.identity_linf = identity_linf;
    return rep;
}

MadelungReport madelung_residuals(const WavefunctionGrid& prev,
                                  const WavefunctionGrid& now,
                                  const WavefunctionGrid& next,
                                  const Potential& pot, double m, double hbar,
                                  const NodePolicy& nodes) {
    if (!prev.grid.same_as(now.grid) || !next.grid.same_as(now.grid))
        throw std::invalid_argument("madelung_residuals: time slices on different grids");
    const Grid1D& g = now.grid;
    const double dt = 0.5 * (next.time - prev.time);
    if (!(dt > 0.0)) throw std::invalid_argument("time slices must be ordered");

    const ActionFields a = actions_from_wavefunction(now, hbar, nodes);
    ActionFields ap = actions_from_wavefunction(prev, hbar, nodes);
    ActionFields an = actions_from_wavefunction(next, hbar, nodes);
    align_branch(ap.s1, a.s1, hbar, a.valid);
    align_branch(an.s1, a.s1, hbar, a.valid);

    const std::vector<double> ds1 = gradient(g, a.s1);
    const std::vector<double> ds2 = gradient(g, a.s2);
    const std::vector<double> lap_s1 = laplacian1d(g, a.s1);
    const std::vector<double> lap_s2 = laplacian1d(g, a.s2);
    const std::vector<double> rho = now.density();

    std::vector<double> res1(g.n), res2(g.n), resg(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double ds1_dt = (an.s1[i] - ap.s1[i]) / (2.0 * dt);
        const double ds2_dt = (an.s2[i] - ap.s2[i]) / (2.0 * dt);
        const double u = pot(g.x(i));
        res1[i] = ds2_dt - (hbar / (2.0 * m) * lap_s1[i] - ds1[i] * ds2[i] / m);
        res2[i] = -ds1_dt - (ds1[i] * ds1[i] / (2.0 * m) - ds2[i] * ds2[i] / (2.0 * m) +
                             hbar / (2.0 * m) * lap_s2[i] + u);
        resg[i] = -ds1_dt - (ds1[i] * ds1[i] / (2.0 * m) + ds2[i] * ds2[i] / (2.0 * m) + u);
    }

    MadelungReport rep;
    rep.phase_diffusion = make_report(g, std::move(res1), rho, a.valid, dt);
    rep.hamilton_jacobi = make_report(g, std::move(res2), rho, a.valid, dt);
    rep.local_energy = make_report(g, std::move(resg), rho, a.valid, dt);
    return rep;
}

IntegralIdentityReport integral_identity_check(const Grid1D& g,
                                               const std::vector<double>& s2,
                                               double hbar) {
    const std::vector<double> ds2 = gradient(g, s2);
    const std::vector<double> lap = laplacian1d(g, s2);
    const std::vector<double> w = quadrature_weights(g);

    IntegralIdentityReport rep;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double weight = std::exp(-2.0 * s2[i] / hbar);
        rep.lhs += w[i] * lap[i] * weight;
        rep.rhs += w[i] * (2.0 / hbar) * ds2[i] * ds2[i] * weight;
        rep.pointwise_residual_max =
            std::max(rep.pointwise_residual_max,
                     std::abs(lap[i] - (2.0 / hbar) * ds2[i] * ds2[i]));
    }
    const auto surface = [&](std::size_t i) {
        const double area =
            g.geometry == Geometry::Radial ? 4.0 * M_PI * g.x(i) * g.x(i) : 1.0;
        return std::abs(ds2[i]) * std::exp(-2.0 * s2[i] / hbar) * area;
    };
    rep.boundary_flux = std::max(surface(0), surface(g.n - 1));
    rep.surface_term_warning = rep.boundary_flux >= 1e-12;
    return rep;
}

EnergySplit energy_split(const WavefunctionGrid& psi, const Potential& pot,
                         double m, double hbar, const NodePolicy& nodes) {
    const ActionFields a = actions_from_wavefunction(psi, hbar, nodes);
    const VelocityFields vel = velocities_from_actions(a, m);
    const std::vector<double> rho = psi.density();
    const std::vector<double> w = quadrature_weights(psi.grid);

    EnergySplit e;
    for (std::size_t i = 0; i < psi.grid.n; ++i) {
        if (w[i] == 0.0) continue;
        const double wr = w[i] * rho[i];
        e.t_current += wr * 0.5 * m * vel.current[i] * vel.current[i];
        e.t_osmotic += wr * 0.5 * m * vel.osmotic[i] * vel.osmotic[i];
        e.v_pot += wr * pot(psi.grid.x(i));
    }
    e.total = e.t_current + e.t_osmotic + e.v_pot;
    return e;
}

}  // namespace sed
