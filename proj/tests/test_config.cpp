#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "sed/config.hpp"

using namespace sed;

namespace {

std::string message_of(const std::string& text, const std::string& override_name = "") {
    try {
        parse_config(text, override_name);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("experiment names round-trip") {
    for (Experiment e : {Experiment::VacuumSample, Experiment::OscillatorRun,
                         Experiment::CommutatorSum, Experiment::NelsonRun,
                         Experiment::HlikeGround}) {
        CHECK(experiment_by_name(experiment_name(e)) == e);
    }
    CHECK_THROWS_AS((void)experiment_by_name("bogus"), ConfigError);
}

TEST_CASE("defaults survive a canonical round trip, every experiment") {
    for (Experiment e : {Experiment::VacuumSample, Experiment::OscillatorRun,
                         Experiment::CommutatorSum, Experiment::NelsonRun,
                         Experiment::HlikeGround}) {
        const RunConfig rc = default_config(e);
        const RunConfig back = parse_config(canonical_config(rc));
        CHECK(back == rc);
    }
}

TEST_CASE("non-default values survive a canonical round trip") {
    RunConfig rc = default_config(Experiment::NelsonRun);
    rc.seed = 987654321;
    rc.workers = 4;
    rc.unit_system = "gaussian-cgs";
    rc.nelson.n_walkers = 123;
    rc.nelson.boundary = "reflect";
    rc.vacuum.law = "uniform";
    rc.oscillator.tau_omega0 = 1e-4;
    const RunConfig back = parse_config(canonical_config(rc));
    CHECK(back == rc);
}

TEST_CASE("experiment can come from the command line only") {
    const RunConfig rc = parse_config("", "commutator-sum");
    CHECK(rc.experiment == Experiment::CommutatorSum);
}

TEST_CASE("missing experiment is an error") {
    const std::string msg = message_of("[run]\nseed = 1\n");
    CHECK(msg.find("experiment") != std::string::npos);
}

TEST_CASE("config and command line must agree on the experiment") {
    const std::string msg =
        message_of("[run]\nexperiment = nelson-run\n", "hlike-ground");
    CHECK(msg.find("nelson-run") != std::string::npos);
    CHECK(msg.find("hlike-ground") != std::string::npos);
}

TEST_CASE("unknown keys are rejected by name") {
    const std::string msg =
        message_of("[run]\nexperiment = nelson-run\n[nelson]\nwalkers = 10\n");
    CHECK(msg.find("unknown key 'nelson.walkers'") != std::string::npos);
}

TEST_CASE("type errors carry the line number") {
    const std::string msg =
        message_of("[run]\nexperiment = nelson-run\n\n[nelson]\ndt = fast\n");
    CHECK(msg.find("line 5") != std::string::npos);
    CHECK(msg.find("nelson.dt") != std::string::npos);
}

TEST_CASE("validation cites the violated rule") {
    const std::string msg = message_of(
        "[run]\nexperiment = commutator-sum\n[vacuum_field]\nomega_min = -1\n");
    CHECK(msg.find("0 < omega_min < omega_max") != std::string::npos);

    CHECK(message_of("[run]\nexperiment = nelson-run\n[nelson]\nboundary = bounce\n")
              .find("boundary") != std::string::npos);
    CHECK(message_of("[run]\nexperiment = nelson-run\nworkers = 0\n")
              .find("workers") != std::string::npos);
    CHECK(message_of("[run]\nexperiment = hlike-ground\n[hydrogen]\nz_min = 0\n")
              .find("z_min") != std::string::npos);
}

TEST_CASE("comments and blank lines are ignored") {
    const RunConfig rc = parse_config(
        "# a comment\n\n[run]\nexperiment = hlike-ground  \nseed = 7 # trailing\n");
    CHECK(rc.experiment == Experiment::HlikeGround);
    CHECK(rc.seed == 7);
}

TEST_CASE("malformed lines report their position") {
    const std::string msg = message_of("[run]\nexperiment = nelson-run\nnot a pair\n");
    CHECK(msg.find("line 3") != std::string::npos);
}

TEST_CASE("default seeds and workers") {
    const RunConfig rc = default_config(Experiment::VacuumSample);
    CHECK(rc.seed == 0);
    CHECK(rc.workers == 1);
    CHECK(rc.unit_system == "natural");
}
