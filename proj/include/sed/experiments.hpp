#pragma once

// Experiment dispatch: every run writes a summary.json (inputs echoed, seed,
// headline numbers, wall time) plus experiment-specific CSV artifacts into
// output_dir. Exit-code contract: 0 success, 1 config or I/O error,
// 2 tolerance failure in check mode.

#include <string>

#include "sed/config.hpp"

namespace sed {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitToleranceFailure = 2;

// Runs the configured experiment; throws ConfigError / std::runtime_error on
// invalid input or I/O failure. Returns kExitOk, or kExitToleranceFailure
// when check_mode is set and a pinned tolerance is not met.
int run_experiment(const RunConfig& rc, bool check_mode);

// Exception-absorbing wrapper with the CLI exit-code contract; fills
// `error_message` on failure.
int run_experiment_exit_code(const RunConfig& rc, bool check_mode,
                             std::string* error_message = nullptr);

}  // namespace sed
