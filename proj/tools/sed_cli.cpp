// Command-line front end. Links only the C API.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sed/sed_c.h"

int main(int argc, char** argv) {
    CLI::App app{"stochastic-electrodynamics oscillator toolkit"};
    app.require_subcommand(0, 1);

    const std::vector<std::string> experiments = {
        "vacuum-sample", "oscillator-run", "commutator-sum", "nelson-run",
        "hlike-ground"};

    std::string config_path;
    long long seed = -1;
    bool check = false;
    bool print_defaults = false;
    std::string out_dir;

    std::vector<CLI::App*> subs;
    for (const std::string& name : experiments) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "INI config file");
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_flag("--check", check, "verify pinned tolerances; exit 2 on failure");
        sub->add_flag("--print-defaults", print_defaults,
                      "print the canonical default config and exit");
        sub->add_option("--out", out_dir, "output directory");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    std::string experiment;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) experiment = experiments[i];
    }
    if (experiment.empty()) {
        std::fprintf(stderr, "error: an experiment subcommand is required\n%s\n",
                     app.help().c_str());
        return 1;
    }

    if (print_defaults) {
        const long long n = sed_default_config(experiment.c_str(), nullptr, 0);
        if (n < 0) {
            std::fprintf(stderr, "error: %s\n", sed_last_error());
            return 1;
        }
        std::string buf(static_cast<std::size_t>(n) + 1, '\0');
        sed_default_config(experiment.c_str(), buf.data(), buf.size());
        std::fputs(buf.c_str(), stdout);
        return 0;
    }

    // Environment override applies only to the output directory.
    if (out_dir.empty()) {
        if (const char* env = std::getenv("SED_OUT_DIR"); env != nullptr && *env) {
            out_dir = env;
        }
    }

    const char* cfg = config_path.empty() ? nullptr : config_path.c_str();
    const char* out = out_dir.empty() ? nullptr : out_dir.c_str();
    const int rc = sed_run_experiment(cfg, experiment.c_str(), seed, out, check ? 1 : 0);
    if (rc != 0) {
        const char* msg = sed_last_error();
        if (msg != nullptr && *msg != '\0') std::fprintf(stderr, "error: %s\n", msg);
        if (rc == 2) std::fprintf(stderr, "check failed: see summary.json\n");
    }
    return rc;
}
