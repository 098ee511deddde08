#include "sed/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "sed/csv.hpp"

namespace sed {

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::VacuumSample: return "vacuum-sample";
        case Experiment::OscillatorRun: return "oscillator-run";
        case Experiment::CommutatorSum: return "commutator-sum";
        case Experiment::NelsonRun: return "nelson-run";
        case Experiment::HlikeGround: return "hlike-ground";
    }
    throw ConfigError("unreachable experiment enum");
}

Experiment experiment_by_name(const std::string& name) {
    for (Experiment e : {Experiment::VacuumSample, Experiment::OscillatorRun,
                         Experiment::CommutatorSum, Experiment::NelsonRun,
                         Experiment::HlikeGround})
        if (experiment_name(e) == name) return e;
    throw ConfigError("unknown experiment '" + name +
                      "' (expected vacuum-sample, oscillator-run, commutator-sum, "
                      "nelson-run or hlike-ground)");
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
};

using Section = std::map<std::string, Entry>;
using Doc = std::map<std::string, Section>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Doc parse_ini(const std::string& text) {
    Doc doc;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            doc[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        doc[section][key] = {trim(line.substr(eq + 1)), lineno, false};
    }
    return doc;
}

class Reader {
  public:
    explicit Reader(Doc doc) : doc_(std::move(doc)) {}

    bool has(const std::string& sec, const std::string& key) {
        auto s = doc_.find(sec);
        return s != doc_.end() && s->second.count(key) > 0;
    }

    template <typename T, typename Parse>
    void get(const std::string& sec, const std::string& key, T& out, Parse parse,
             const char* type_name) {
        auto s = doc_.find(sec);
        if (s == doc_.end()) return;
        auto k = s->second.find(key);
        if (k == s->second.end()) return;
        k->second.consumed = true;
        try {
            out = parse(k->second.value);
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(k->second.line) + ": key '" +
                              sec + "." + key + "' expects " + type_name + ", got '" +
                              k->second.value + "'");
        }
    }

    void get_double(const std::string& sec, const std::string& key, double& out) {
        get(sec, key, out, [](const std::string& v) {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        }, "a number");
    }

    void get_u64(const std::string& sec, const std::string& key, std::uint64_t& out) {
        get(sec, key, out, [](const std::string& v) {
            std::uint64_t x = 0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc() || p != v.data() + v.size())
                throw std::invalid_argument(v);
            return x;
        }, "a nonnegative integer");
    }

    void get_int(const std::string& sec, const std::string& key, int& out) {
        get(sec, key, out, [](const std::string& v) {
            std::size_t pos = 0;
            const int d = std::stoi(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        }, "an integer");
    }

    void get_uint(const std::string& sec, const std::string& key, unsigned& out) {
        std::uint64_t tmp = out;
        get_u64(sec, key, tmp);
        out = static_cast<unsigned>(tmp);
    }

    void get_string(const std::string& sec, const std::string& key, std::string& out) {
        get(sec, key, out, [](const std::string& v) { return v; }, "a string");
    }

    void reject_unconsumed() const {
        for (const auto& [sec, keys] : doc_)
            for (const auto& [key, entry] : keys)
                if (!entry.consumed)
                    throw ConfigError("line " + std::to_string(entry.line) +
                                      ": unknown key '" + sec + "." + key + "'");
    }

  private:
    Doc doc_;
};

void validate(const RunConfig& rc) {
    if (rc.unit_system != "natural" && rc.unit_system != "gaussian-cgs")
        throw ConfigError("run.unit_system must be 'natural' or 'gaussian-cgs'");
    if (rc.workers < 1) throw ConfigError("run.workers must be >= 1");
    const auto& v = rc.vacuum;
    if (!(v.omega_min > 0.0) || !(v.omega_min < v.omega_max))
        throw ConfigError(
            "vacuum_field cutoffs must satisfy 0 < omega_min < omega_max");
    if (v.law != "uniform" && v.law != "stratified")
        throw ConfigError("vacuum_field.law must be 'uniform' or 'stratified'");
    if (v.uniform_mix < 0.0 || v.uniform_mix > 1.0)
        throw ConfigError("vacuum_field.uniform_mix must lie in [0, 1]");
    if (!(v.omega0 > 0.0)) throw ConfigError("vacuum_field.omega0 must be positive");
    if (v.linewidth < 0.0) throw ConfigError("vacuum_field.linewidth must be >= 0");
    const auto& o = rc.oscillator;
    if (!(o.omega0 > 0.0)) throw ConfigError("oscillator.omega0 must be positive");
    if (!(o.tau_omega0 > 0.0) || !(o.tau_omega0 < 1.0))
        throw ConfigError("oscillator.tau_omega0 must lie in (0, 1)");
    if (!(o.dt > 0.0) || !(o.t_final > o.dt))
        throw ConfigError("oscillator timing requires 0 < dt < t_final");
    if (o.n_realizations < 1) throw ConfigError("oscillator.n_realizations must be >= 1");
    if (o.times_per_realization < 1)
        throw ConfigError("oscillator.times_per_realization must be >= 1");
    if (!(o.time_span > 0.0)) throw ConfigError("oscillator.time_span must be positive");
    const auto& n = rc.nelson;
    if (n.n_walkers < 1) throw ConfigError("nelson.n_walkers must be >= 1");
    if (!(n.dt > 0.0) || !(n.t_final > 0.0))
        throw ConfigError("nelson timing requires positive dt and t_final");
    if (!(n.x_min < n.x_max)) throw ConfigError("nelson grid requires x_min < x_max");
    if (n.grid_points < 16) throw ConfigError("nelson.grid_points must be >= 16");
    if (n.boundary != "clip" && n.boundary != "reflect" && n.boundary != "error")
        throw ConfigError("nelson.boundary must be clip, reflect or error");
    const auto& h = rc.hydrogen;
    if (h.z_min < 1 || h.z_max < h.z_min)
        throw ConfigError("hydrogen requires 1 <= z_min <= z_max");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& experiment_override) {
    Reader r(parse_ini(text));
    RunConfig rc;

    std::string exp_key;
    r.get_string("run", "experiment", exp_key);
    if (!experiment_override.empty()) {
        rc.experiment = experiment_by_name(experiment_override);
        if (!exp_key.empty() && exp_key != experiment_override)
            throw ConfigError("config names experiment '" + exp_key +
                              "' but the command line asked for '" +
                              experiment_override + "'");
    } else if (!exp_key.empty()) {
        rc.experiment = experiment_by_name(exp_key);
    } else {
        throw ConfigError("missing required key: section [run] needs 'experiment' "
                          "(or pass it on the command line)");
    }

    r.get_string("run", "unit_system", rc.unit_system);
    r.get_u64("run", "seed", rc.seed);
    r.get_uint("run", "workers", rc.workers);
    r.get_string("run", "output_dir", rc.output_dir);

    r.get_u64("vacuum_field", "count", rc.vacuum.count);
    r.get_double("vacuum_field", "omega_min", rc.vacuum.omega_min);
    r.get_double("vacuum_field", "omega_max", rc.vacuum.omega_max);
    r.get_string("vacuum_field", "law", rc.vacuum.law);
    r.get_double("vacuum_field", "omega0", rc.vacuum.omega0);
    r.get_double("vacuum_field", "linewidth", rc.vacuum.linewidth);
    r.get_double("vacuum_field", "uniform_mix", rc.vacuum.uniform_mix);

    r.get_double("oscillator", "omega0", rc.oscillator.omega0);
    r.get_double("oscillator", "tau_omega0", rc.oscillator.tau_omega0);
    r.get_u64("oscillator", "n_realizations", rc.oscillator.n_realizations);
    r.get_u64("oscillator", "times_per_realization",
              rc.oscillator.times_per_realization);
    r.get_double("oscillator", "time_span", rc.oscillator.time_span);
    r.get_double("oscillator", "dt", rc.oscillator.dt);
    r.get_double("oscillator", "t_final", rc.oscillator.t_final);

    r.get_u64("nelson", "n_walkers", rc.nelson.n_walkers);
    r.get_double("nelson", "dt", rc.nelson.dt);
    r.get_double("nelson", "t_final", rc.nelson.t_final);
    r.get_double("nelson", "x_min", rc.nelson.x_min);
    r.get_double("nelson", "x_max", rc.nelson.x_max);
    r.get_u64("nelson", "grid_points", rc.nelson.grid_points);
    r.get_string("nelson", "boundary", rc.nelson.boundary);

    r.get_int("hydrogen", "z_min", rc.hydrogen.z_min);
    r.get_int("hydrogen", "z_max", rc.hydrogen.z_max);

    r.reject_unconsumed();
    validate(rc);
    return rc;
}

RunConfig default_config(Experiment e) {
    RunConfig rc;
    rc.experiment = e;
    return rc;
}

std::string canonical_config(const RunConfig& rc) {
    std::ostringstream out;
    out << "[run]\n";
    out << "experiment = " << experiment_name(rc.experiment) << "\n";
    out << "unit_system = " << rc.unit_system << "\n";
    out << "seed = " << rc.seed << "\n";
    out << "workers = " << rc.workers << "\n";
    out << "output_dir = " << rc.output_dir << "\n";
    out << "\n[vacuum_field]\n";
    out << "count = " << rc.vacuum.count << "\n";
    out << "omega_min = " << csv::num(rc.vacuum.omega_min) << "\n";
    out << "omega_max = " << csv::num(rc.vacuum.omega_max) << "\n";
    out << "law = " << rc.vacuum.law << "\n";
    out << "omega0 = " << csv::num(rc.vacuum.omega0) << "\n";
    out << "linewidth = " << csv::num(rc.vacuum.linewidth) << "\n";
    out << "uniform_mix = " << csv::num(rc.vacuum.uniform_mix) << "\n";
    out << "\n[oscillator]\n";
    out << "omega0 = " << csv::num(rc.oscillator.omega0) << "\n";
    out << "tau_omega0 = " << csv::num(rc.oscillator.tau_omega0) << "\n";
    out << "n_realizations = " << rc.oscillator.n_realizations << "\n";
    out << "times_per_realization = " << rc.oscillator.times_per_realization << "\n";
    out << "time_span = " << csv::num(rc.oscillator.time_span) << "\n";
    out << "dt = " << csv::num(rc.oscillator.dt) << "\n";
    out << "t_final = " << csv::num(rc.oscillator.t_final) << "\n";
    out << "\n[nelson]\n";
    out << "n_walkers = " << rc.nelson.n_walkers << "\n";
    out << "dt = " << csv::num(rc.nelson.dt) << "\n";
    out << "t_final = " << csv::num(rc.nelson.t_final) << "\n";
    out << "x_min = " << csv::num(rc.nelson.x_min) << "\n";
    out << "x_max = " << csv::num(rc.nelson.x_max) << "\n";
    out << "grid_points = " << rc.nelson.grid_points << "\n";
    out << "boundary = " << rc.nelson.boundary << "\n";
    out << "\n[hydrogen]\n";
    out << "z_min = " << rc.hydrogen.z_min << "\n";
    out << "z_max = " << rc.hydrogen.z_max << "\n";
    return out.str();
}

}  // namespace sed
