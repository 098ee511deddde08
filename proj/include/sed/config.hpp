#pragma once

// INI-style run configuration: [section] headers, key = value lines, '#'
// comments. Unknown keys are rejected by name; type errors carry the line
// number. parse(canonical_config(rc)) reproduces rc exactly.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sed {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Experiment {
    VacuumSample,
    OscillatorRun,
    CommutatorSum,
    NelsonRun,
    HlikeGround,
};

std::string experiment_name(Experiment e);
Experiment experiment_by_name(const std::string& name);

struct RunConfig {
    Experiment experiment = Experiment::VacuumSample;
    std::string unit_system = "natural";
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string output_dir = "out";

    struct VacuumField {
        std::uint64_t count = 20000;
        double omega_min = 0.02;
        double omega_max = 50.0;
        std::string law = "stratified";  // or "uniform"
        double omega0 = 1.0;
        double linewidth = 0.0;  // 0: auto, tau * omega0^2 / 2
        double uniform_mix = 0.1;
        bool operator==(const VacuumField&) const = default;
    } vacuum;

    struct Oscillator {
        double omega0 = 1.0;
        double tau_omega0 = 1e-6;  // dimensionless damping tau * omega0
        std::uint64_t n_realizations = 400;
        std::uint64_t times_per_realization = 32;
        double time_span = 256.0;
        double dt = 0.05;  // trajectory sample spacing
        double t_final = 64.0;
        bool operator==(const Oscillator&) const = default;
    } oscillator;

    struct Nelson {
        std::uint64_t n_walkers = 100000;
        double dt = 1e-3;
        double t_final = 10.0;
        double x_min = -8.0;
        double x_max = 8.0;
        std::uint64_t grid_points = 4001;
        std::string boundary = "clip";  // clip | reflect | error
        bool operator==(const Nelson&) const = default;
    } nelson;

    struct Hydrogen {
        int z_min = 1;
        int z_max = 10;
        bool operator==(const Hydrogen&) const = default;
    } hydrogen;

    bool operator==(const RunConfig&) const = default;
};

// Parse and validate; `experiment_override` (from the CLI) wins over the
// config file's own experiment key, which must agree when both are present.
RunConfig parse_config(const std::string& text,
                       const std::string& experiment_override = "");

RunConfig default_config(Experiment e);

std::string canonical_config(const RunConfig& rc);

}  // namespace sed
