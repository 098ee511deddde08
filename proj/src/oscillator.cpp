#include "sed/oscillator.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sed/csv.hpp"
#include "sed/rng.hpp"
#include "json.hpp"

namespace sed {

OscillatorParams OscillatorParams::derived(double e, double m, double omega0,
                                           double c, double hbar) {
    OscillatorParams p;
    p.charge = e;
    p.mass = m;
    p.natural_frequency = omega0;
    p.light_speed = c;
    p.hbar = hbar;
    p.radiation_tau = radiation_time_constant(e, m, c);
    return p;
}

double radiation_time_constant(double e, double m, double c) {
    if (!(m > 0.0) || !(c > 0.0))
        throw std::domain_error("radiation_time_constant requires m > 0 and c > 0");
    if (e == 0.0) throw std::domain_error("radiation_time_constant requires e != 0");
    return 2.0 * e * e / (3.0 * m * c * c * c);
}

std::complex<double> susceptibility(double omega, const OscillatorParams& p) {
    if (!std::isfinite(omega)) throw std::domain_error("susceptibility requires finite omega");
    const double w0 = p.natural_frequency;
    return 1.0 / std::complex<double>(w0 * w0 - omega * omega,
                                      p.radiation_tau * omega * omega * omega);
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& out) {
    out << "t,x,y,z,px,py,pz\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const Vec3& r = tr.positions[i];
        const Vec3& p = tr.momenta[i];
        csv::row(out, {tr.times[i], r.x, r.y, r.z, p.x, p.y, p.z});
    }
}

void write_trajectory_csv(const Trajectory& tr, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_trajectory_csv(tr, out);
}

SteadyStateSolution::SteadyStateSolution(const ModeSet& ms, const OscillatorParams& p,
                                         const Vec3& site)
    : modes_(&ms), params_(p), site_(site) {
    if (!(p.radiation_tau * p.natural_frequency < 1.0))
        throw std::invalid_argument(
            "spectral solution requires tau * omega0 < 1 (model validity)");
}

Vec3 SteadyStateSolution::position(double t) const {
    Vec3 out;
    const double em = params_.charge / params_.mass;
    const double root2 = std::sqrt(2.0);
    for (const Mode& m : modes_->modes) {
        const double phi = m.frequency * t - dot(m.wavevector, site_) -
                           std::arg(m.amplitude);
        const std::complex<double> chi = susceptibility(m.frequency, params_);
        const std::complex<double> z = std::polar(1.0, phi) * chi;
        out += (-root2 * em * m.field_scale * z.real()) * m.polarization;
    }
    return out;
}

Vec3 SteadyStateSolution::velocity(double t) const {
    Vec3 out;
    const double em = params_.charge / params_.mass;
    const double root2 = std::sqrt(2.0);
    for (const Mode& m : modes_->modes) {
        const double phi = m.frequency * t - dot(m.wavevector, site_) -
                           std::arg(m.amplitude);
        const std::complex<double> chi = susceptibility(m.frequency, params_);
        // d/dt of Re[e^{i phi} chi] is -omega Im[e^{i phi} chi].
        const std::complex<double> z = std::polar(1.0, phi) * chi;
        out += (root2 * em * m.field_scale * m.frequency * z.imag()) * m.polarization;
    }
    return out;
}

Vec3 SteadyStateSolution::momentum(double t) const {
    Vec3 out;
    const double w0 = params_.natural_frequency;
    const double root2 = std::sqrt(2.0);
    for (const Mode& m : modes_->modes) {
        const double phi = m.frequency * t - dot(m.wavevector, site_) -
                           std::arg(m.amplitude);
        const std::complex<double> chi = susceptibility(m.frequency, params_);
        const std::complex<double> z = std::polar(1.0, phi) * chi;
        out += (root2 * params_.charge * m.field_scale * w0 * w0 / m.frequency *
                z.imag()) * m.polarization;
    }
    return out;
}

Trajectory SteadyStateSolution::sample(const std::vector<double>& times) const {
    Trajectory tr;
    tr.times = times;
    tr.positions.reserve(times.size());
    tr.momenta.reserve(times.size());
    for (double t : times) {
        tr.positions.push_back(position(t));
        tr.momenta.push_back(momentum(t));
    }
    return tr;
}

Trajectory steady_state_solution(const ModeSet& ms, const OscillatorParams& p,
                                 const std::vector<double>& times, const Vec3& site) {
    if (ms.modes.empty()) {
        Trajectory tr;
        tr.times = times;
        tr.positions.assign(times.size(), Vec3{});
        tr.momenta.assign(times.size(), Vec3{});
        return tr;
    }
    return SteadyStateSolution(ms, p, site).sample(times);
}

IntegrationResult integrate_equation_of_motion(const OscillatorParams& p,
                                               const DriveFunction& drive,
                                               const Vec3& x0, const Vec3& v0,
                                               double dt, double t_final) {
    if (!(dt > 0.0) || !(t_final > dt))
        throw std::invalid_argument("integration requires dt > 0 and t_final > dt");
    const double w0 = p.natural_frequency;
    const double gamma = p.radiation_tau * w0 * w0;  // order-reduced damping
    const double em = p.charge / p.mass;

    IntegrationResult result;
    result.accuracy_warning = dt * w0 > 0.1;

    const auto n_steps = static_cast<std::size_t>(std::llround(t_final / dt));
    Trajectory& tr = result.trajectory;
    tr.times.reserve(n_steps + 1);
    tr.positions.reserve(n_steps + 1);
    tr.momenta.reserve(n_steps + 1);

    Vec3 x = x0;
    Vec3 v = v0;
    // Order-reduced radiation reaction: tau x''' -> -tau w0^2 x' - tau (e/m) E',
    // so the damping matches the i tau w^3 term of the spectral response to
    // first order in tau.  The drive derivative is taken by central difference.
    const double h = 0.25 * dt;
    const auto accel = [&](const Vec3& xi, const Vec3& vi, double t) {
        const Vec3 edot = (0.5 / h) * (drive(t + h) - drive(t - h));
        return -1.0 * em * (drive(t) + p.radiation_tau * edot) - gamma * vi -
               (w0 * w0) * xi;
    };
    tr.times.push_back(0.0);
    tr.positions.push_back(x);
    tr.momenta.push_back(p.mass * v);
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const Vec3 k1x = v, k1v = accel(x, v, t);
        const Vec3 k2x = v + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, t + 0.5 * dt);
        const Vec3 k3x = v + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, t + 0.5 * dt);
        const Vec3 k4x = v + dt * k3v, k4v = accel(x + dt * k3x, v + dt * k3v, t + dt);
        x += (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        tr.times.push_back(static_cast<double>(i + 1) * dt);
        tr.positions.push_back(x);
        tr.momenta.push_back(p.mass * v);
    }
    return result;
}

double commutator_mode_sum(const OscillatorParams& p, const ModeSet& ms) {
    if (ms.modes.empty()) return 0.0;
    const double w0 = p.natural_frequency;
    if (ms.omega_min > w0 || ms.omega_max < w0)
        throw std::invalid_argument("mode-set cutoffs must cover omega0");
    double sum = 0.0;
    for (const Mode& m : ms.modes) {
        const double f2 = m.field_scale * m.field_scale;
        const double chi2 = std::norm(susceptibility(m.frequency, p));
        sum += 2.0 * (w0 * w0 / m.frequency) * (p.charge * p.charge / p.mass) *
               f2 * (1.0 / 3.0) * chi2;
    }
    return sum;
}

DispersionSummary oscillator_dispersions(const OscillatorParams& p, const ModeSet& ms) {
    DispersionSummary d;
    d.n_modes = ms.modes.size();
    d.n_realizations = 1;
    d.seed = ms.seed;
    const double em = p.charge / p.mass;
    const double w0 = p.natural_frequency;
    for (const Mode& m : ms.modes) {
        const double f2 = m.field_scale * m.field_scale;
        const double chi2 = std::norm(susceptibility(m.frequency, p));
        // <x_q^2> = (e/m)^2 f^2 I^2 |chi|^2 per mode, I^2 -> 1/3.
        const double x2 = em * em * f2 * (1.0 / 3.0) * chi2;
        d.x2 += x2;
        const double pw = p.mass * w0 * w0 / m.frequency;
        d.p2 += pw * pw * x2;
    }
    d.product = d.x2 * d.p2;
    return d;
}

DispersionSummary ensemble_dispersions(const OscillatorParams& p,
                                       const ModeSamplingConfig& cfg,
                                       std::size_t n_realizations,
                                       std::size_t times_per_realization,
                                       double time_span, unsigned workers) {
    std::vector<double> x2(n_realizations, 0.0);
    std::vector<double> p2(n_realizations, 0.0);

    const auto run_one = [&](std::size_t r) {
        ModeSamplingConfig local = cfg;
        local.seed = rng::derive_seed(cfg.seed, r);
        const ModeSet ms = build_mode_set(local);
        const SteadyStateSolution sol(ms, p);
        double sx = 0.0, sp = 0.0;
        for (std::size_t k = 0; k < times_per_realization; ++k) {
            const double t = time_span * rng::u01(local.seed, 0x71ED5ULL, k);
            sx += norm2(sol.position(t));
            sp += norm2(sol.momentum(t));
        }
        // |x|^2 / 3 averages the three components.
        x2[r] = sx / (3.0 * static_cast<double>(times_per_realization));
        p2[r] = sp / (3.0 * static_cast<double>(times_per_realization));
    };

    if (workers <= 1) {
        for (std::size_t r = 0; r < n_realizations; ++r) run_one(r);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (n_realizations + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(n_realizations, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t r = lo; r < hi; ++r) run_one(r);
            });
        }
        for (auto& t : pool) t.join();
    }

    DispersionSummary d;
    d.n_modes = cfg.count;
    d.n_realizations = n_realizations;
    d.seed = cfg.seed;
    for (std::size_t r = 0; r < n_realizations; ++r) {  // fixed order
        d.x2 += x2[r];
        d.p2 += p2[r];
    }
    d.x2 /= static_cast<double>(n_realizations);
    d.p2 /= static_cast<double>(n_realizations);
    d.product = d.x2 * d.p2;
    return d;
}

void write_dispersions_json(const DispersionSummary& d, const std::string& path) {
    nlohmann::ordered_json j;
    j["x2"] = d.x2;
    j["p2"] = d.p2;
    j["product"] = d.product;
    j["n_modes"] = d.n_modes;
    j["n_realizations"] = d.n_realizations;
    j["seed"] = d.seed;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace sed
