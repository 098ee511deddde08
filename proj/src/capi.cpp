#include "sed/sed_c.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>

#include "sed/config.hpp"
#include "sed/experiments.hpp"
#include "sed/hydrogen.hpp"
#include "sed/oscillator.hpp"
#include "sed/uncertainty.hpp"
#include "sed/vacuum_field.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename F>
sed_status guarded(F&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const sed::ConfigError& e) {
        set_error(e.what());
        return SED_ERR_CONFIG;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return SED_ERR_DOMAIN;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return SED_ERR_DOMAIN;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SED_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return SED_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

const char* sed_last_error(void) { return g_last_error.c_str(); }

int sed_run_experiment(const char* config_path, const char* experiment,
                       long long seed_override, const char* out_dir,
                       int check_mode) {
    try {
        g_last_error.clear();
        std::string text;
        if (config_path != nullptr) {
            std::ifstream in(config_path);
            if (!in) {
                set_error(std::string("cannot open config file: ") + config_path);
                return sed::kExitConfigError;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        const std::string exp = experiment != nullptr ? experiment : "";
        sed::RunConfig rc = sed::parse_config(text, exp);
        if (seed_override >= 0) {
            rc.seed = static_cast<std::uint64_t>(seed_override);
        }
        if (out_dir != nullptr && *out_dir != '\0') {
            rc.output_dir = out_dir;
        }
        std::string err;
        const int rc_exit = sed::run_experiment_exit_code(rc, check_mode != 0, &err);
        if (!err.empty()) set_error(err);
        return rc_exit;
    } catch (const sed::ConfigError& e) {
        set_error(e.what());
        return sed::kExitConfigError;
    } catch (const std::exception& e) {
        set_error(e.what());
        return sed::kExitConfigError;
    }
}

long long sed_default_config(const char* experiment, char* buf, size_t cap) {
    try {
        g_last_error.clear();
        if (experiment == nullptr) {
            set_error("experiment name is null");
            return -1;
        }
        const sed::Experiment exp = sed::experiment_by_name(experiment);
        const std::string text = sed::canonical_config(sed::default_config(exp));
        if (buf != nullptr && cap > 0) {
            const size_t n = std::min(cap - 1, text.size());
            std::memcpy(buf, text.data(), n);
            buf[n] = '\0';
        }
        return static_cast<long long>(text.size());
    } catch (const std::exception& e) {
        set_error(e.what());
        return -1;
    }
}

struct sed_mode_set {
    sed::ModeSet ms;
};

sed_status sed_mode_set_build(size_t count, double omega_min, double omega_max,
                              int stratified, double omega0, double linewidth,
                              double uniform_mix, uint64_t seed,
                              sed_mode_set** out) {
    return guarded([&]() -> sed_status {
        if (out == nullptr) {
            set_error("output pointer is null");
            return SED_ERR_DOMAIN;
        }
        sed::ModeSamplingConfig cfg;
        cfg.count = count;
        cfg.omega_min = omega_min;
        cfg.omega_max = omega_max;
        cfg.law = stratified != 0 ? sed::SamplingLaw::ResonanceStratified
                                  : sed::SamplingLaw::Uniform;
        cfg.omega0 = omega0;
        cfg.linewidth = linewidth;
        cfg.uniform_mix = uniform_mix;
        cfg.seed = seed;
        auto* handle = new sed_mode_set{sed::build_mode_set(cfg)};
        *out = handle;
        return SED_OK;
    });
}

void sed_mode_set_free(sed_mode_set* ms) { delete ms; }

size_t sed_mode_set_size(const sed_mode_set* ms) {
    return ms == nullptr ? 0 : ms->ms.modes.size();
}

sed_status sed_electric_field_at(const sed_mode_set* ms, const double r[3],
                                 double t, double out[3]) {
    return guarded([&]() -> sed_status {
        if (ms == nullptr || r == nullptr || out == nullptr) {
            set_error("null argument");
            return SED_ERR_DOMAIN;
        }
        const sed::Vec3 e = sed::electric_field_at(ms->ms, {r[0], r[1], r[2]}, t);
        out[0] = e.x;
        out[1] = e.y;
        out[2] = e.z;
        return SED_OK;
    });
}

sed_status sed_vector_potential_at(const sed_mode_set* ms, const double r[3],
                                   double t, double out[3]) {
    return guarded([&]() -> sed_status {
        if (ms == nullptr || r == nullptr || out == nullptr) {
            set_error("null argument");
            return SED_ERR_DOMAIN;
        }
        const sed::Vec3 a = sed::vector_potential_at(ms->ms, {r[0], r[1], r[2]}, t);
        out[0] = a.x;
        out[1] = a.y;
        out[2] = a.z;
        return SED_OK;
    });
}

sed_status sed_radiation_time_constant(double e, double m, double c, double* tau) {
    return guarded([&]() -> sed_status {
        if (tau == nullptr) {
            set_error("output pointer is null");
            return SED_ERR_DOMAIN;
        }
        *tau = sed::radiation_time_constant(e, m, c);
        return SED_OK;
    });
}

sed_status sed_susceptibility(double omega, double omega0, double tau,
                              double* re, double* im) {
    return guarded([&]() -> sed_status {
        if (re == nullptr || im == nullptr) {
            set_error("output pointer is null");
            return SED_ERR_DOMAIN;
        }
        sed::OscillatorParams p;
        p.natural_frequency = omega0;
        p.radiation_tau = tau;
        const std::complex<double> chi = sed::susceptibility(omega, p);
        *re = chi.real();
        *im = chi.imag();
        return SED_OK;
    });
}

sed_status sed_commutator_mode_sum(const sed_mode_set* ms, double omega0,
                                   double tau, double* value) {
    return guarded([&]() -> sed_status {
        if (ms == nullptr || value == nullptr) {
            set_error("null argument");
            return SED_ERR_DOMAIN;
        }
        sed::OscillatorParams p;
        p.natural_frequency = omega0;
        p.radiation_tau = tau;
        // Coupling consistent with the damping: tau = 2 e^2 / (3 m c^3).
        p.charge = std::sqrt(1.5 * tau);
        *value = sed::commutator_mode_sum(p, ms->ms);
        return SED_OK;
    });
}

sed_status sed_angular_momentum_total(int l, double hbar, double* l2_total) {
    return guarded([&]() -> sed_status {
        if (l2_total == nullptr) {
            set_error("output pointer is null");
            return SED_ERR_DOMAIN;
        }
        if (l < 0) {
            set_error("angular momentum quantum number must be >= 0");
            return SED_ERR_DOMAIN;
        }
        *l2_total = sed::angular_momentum_model_totals(l, hbar).l2_total;
        return SED_OK;
    });
}

sed_status sed_hlike_ground(int z, double e, double m, double hbar, double* r_min,
                            double* e_min) {
    return guarded([&]() -> sed_status {
        if (r_min == nullptr || e_min == nullptr) {
            set_error("output pointer is null");
            return SED_ERR_DOMAIN;
        }
        const sed::UnitSystem units{"custom", e, m, hbar, 1.0, 1.0};
        const sed::GroundState gs = sed::minimize_ground_energy({z, units});
        *r_min = gs.r_min;
        *e_min = gs.e_min;
        return SED_OK;
    });
}

}  // extern "C"
