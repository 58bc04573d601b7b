#include "fpu/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fpu {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config field '" + key + "': " + why);
}

struct KvStore {
    std::map<std::string, std::string> kv;  // "section.key" -> value
    std::map<std::string, bool> used;

    const std::string* find(const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        used[key] = true;
        return &it->second;
    }
    double number(const std::string& key, double fallback) {
        const auto* v = find(key);
        if (!v) return fallback;
        try {
            size_t pos = 0;
            const double x = std::stod(*v, &pos);
            if (pos != v->size()) fail(key, "trailing characters in '" + *v + "'");
            return x;
        } catch (const std::invalid_argument&) {
            fail(key, "not a number: '" + *v + "'");
        }
    }
    long integer(const std::string& key, long fallback) {
        const auto* v = find(key);
        if (!v) return fallback;
        try {
            size_t pos = 0;
            const long x = std::stol(*v, &pos);
            if (pos != v->size()) fail(key, "trailing characters in '" + *v + "'");
            return x;
        } catch (const std::invalid_argument&) {
            fail(key, "not an integer: '" + *v + "'");
        }
    }
    std::uint64_t uinteger(const std::string& key, std::uint64_t fallback) {
        const auto* v = find(key);
        if (!v) return fallback;
        try {
            return std::stoull(*v);
        } catch (const std::invalid_argument&) {
            fail(key, "not an unsigned integer: '" + *v + "'");
        }
    }
    bool boolean(const std::string& key, bool fallback) {
        const auto* v = find(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1") return true;
        if (*v == "false" || *v == "0") return false;
        fail(key, "expected true/false: '" + *v + "'");
    }
    std::optional<double> opt_number(const std::string& key) {
        const auto* v = find(key);
        if (!v || *v == "auto") return std::nullopt;
        return number(key, 0.0);
    }
    std::optional<long> opt_integer(const std::string& key) {
        const auto* v = find(key);
        if (!v || *v == "auto") return std::nullopt;
        return integer(key, 0);
    }
    std::string text(const std::string& key, const std::string& fallback) {
        const auto* v = find(key);
        return v ? *v : fallback;
    }
    std::vector<int> int_list(const std::string& key, std::vector<int> fallback) {
        const auto* v = find(key);
        if (!v) return fallback;
        std::vector<int> out;
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                out.push_back(std::stoi(item));
            } catch (const std::invalid_argument&) {
                fail(key, "bad list entry '" + item + "'");
            }
        }
        if (out.empty()) fail(key, "empty list");
        return out;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : "auto"; }
std::string fmt_opt(const std::optional<long>& v) {
    return v ? std::to_string(*v) : "auto";
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    KvStore store;
    std::string section;
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        store.kv[key] = trim(line.substr(eq + 1));
    }

    RunConfig c;
    c.n_particles = int(store.integer("chain.n_particles", c.n_particles));
    c.alpha = store.number("chain.alpha", c.alpha);
    {
        // beta follows alpha unless given explicitly
        const auto* b = store.find("chain.beta");
        c.beta = b ? store.number("chain.beta", 0.0) : c.alpha;
    }
    c.allow_unequal = store.boolean("chain.allow_unequal", c.allow_unequal);

    c.temperature = store.number("sampler.temperature", c.temperature);
    c.n_beads = int(store.integer("sampler.n_beads", c.n_beads));
    c.dt = store.opt_number("sampler.dt");
    c.n_burn = store.opt_integer("sampler.n_burn");
    c.stride = store.opt_integer("sampler.stride");
    c.n_samples = store.integer("sampler.n_samples", c.n_samples);
    c.seed = store.uinteger("sampler.seed", c.seed);

    c.m_chain = int(store.integer("thermostat.m_chain", c.m_chain));
    c.tau_tilde = store.opt_number("thermostat.tau_tilde");
    c.n_respa = int(store.integer("thermostat.n_respa", c.n_respa));
    c.n_sy = int(store.integer("thermostat.n_sy", c.n_sy));

    c.observable = store.text("rpmd.observable", c.observable);
    c.rpmd_t_max = store.opt_number("rpmd.t_max");
    c.n_times = int(store.integer("rpmd.n_times", c.n_times));
    c.rpmd_dt = store.opt_number("rpmd.dt");
    c.epsilon = store.number("rpmd.epsilon", c.epsilon);
    c.max_samples = store.integer("rpmd.max_samples", c.max_samples);

    c.bins = int(store.integer("estimators.bins", c.bins));
    c.subset = store.int_list("estimators.subset", c.subset);
    c.kappa_max = store.number("estimators.kappa_max", c.kappa_max);
    c.n_kappa = int(store.integer("estimators.n_kappa", c.n_kappa));

    c.q_max = store.number("oracle.q_max", c.q_max);
    c.n_q = int(store.integer("oracle.n_q", c.n_q));
    c.oracle_t_min = store.number("oracle.t_min", c.oracle_t_min);
    c.oracle_t_max = store.number("oracle.t_max", c.oracle_t_max);
    c.oracle_n_t = int(store.integer("oracle.n_t", c.oracle_n_t));

    c.directory = store.text("output.directory", c.directory);

    for (const auto& [key, value] : store.kv)
        if (!store.used.contains(key))
            throw std::invalid_argument("config field '" + key + "': unknown key");
    c.validate();
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::string serialize_run_config(const RunConfig& c) {
    std::ostringstream out;
    out << "[chain]\n";
    out << "n_particles = " << c.n_particles << "\n";
    out << "alpha = " << fmt(c.alpha) << "\n";
    out << "beta = " << fmt(c.beta) << "\n";
    out << "allow_unequal = " << (c.allow_unequal ? "true" : "false") << "\n";
    out << "\n[sampler]\n";
    out << "temperature = " << fmt(c.temperature) << "\n";
    out << "n_beads = " << c.n_beads << "\n";
    out << "dt = " << fmt_opt(c.dt) << "\n";
    out << "n_burn = " << fmt_opt(c.n_burn) << "\n";
    out << "stride = " << fmt_opt(c.stride) << "\n";
    out << "n_samples = " << c.n_samples << "\n";
    out << "seed = " << c.seed << "\n";
    out << "\n[thermostat]\n";
    out << "m_chain = " << c.m_chain << "\n";
    out << "tau_tilde = " << fmt_opt(c.tau_tilde) << "\n";
    out << "n_respa = " << c.n_respa << "\n";
    out << "n_sy = " << c.n_sy << "\n";
    out << "\n[rpmd]\n";
    out << "observable = " << c.observable << "\n";
    out << "t_max = " << fmt_opt(c.rpmd_t_max) << "\n";
    out << "n_times = " << c.n_times << "\n";
    out << "dt = " << fmt_opt(c.rpmd_dt) << "\n";
    out << "epsilon = " << fmt(c.epsilon) << "\n";
    out << "max_samples = " << c.max_samples << "\n";
    out << "\n[estimators]\n";
    out << "bins = " << c.bins << "\n";
    out << "subset = ";
    for (size_t i = 0; i < c.subset.size(); ++i)
        out << (i ? "," : "") << c.subset[i];
    out << "\n";
    out << "kappa_max = " << fmt(c.kappa_max) << "\n";
    out << "n_kappa = " << c.n_kappa << "\n";
    out << "\n[oracle]\n";
    out << "q_max = " << fmt(c.q_max) << "\n";
    out << "n_q = " << c.n_q << "\n";
    out << "t_min = " << fmt(c.oracle_t_min) << "\n";
    out << "t_max = " << fmt(c.oracle_t_max) << "\n";
    out << "n_t = " << c.oracle_n_t << "\n";
    out << "\n[output]\n";
    out << "directory = " << c.directory << "\n";
    return out.str();
}

ChainSpec RunConfig::chain_spec() const {
    return ChainSpec::make(n_particles, alpha, beta, allow_unequal);
}

SamplerConfig RunConfig::sampler_config() const {
    SamplerConfig s;
    s.chain = chain_spec();
    s.temperature = temperature;
    s.n_beads = n_beads;
    s.dt = dt;
    s.n_burn = n_burn;
    s.stride = stride;
    s.n_samples = n_samples;
    s.seed = seed;
    s.nhc.m_chain = m_chain;
    s.nhc.tau_tilde = tau_tilde.value_or(0.0);
    s.nhc.n_respa = n_respa;
    s.nhc.n_sy = n_sy;
    return s;
}

KuboOptions RunConfig::kubo_options() const {
    KuboOptions k;
    k.t_max = rpmd_t_max.value_or(0.0);
    k.n_times = n_times;
    k.dt = rpmd_dt;
    k.epsilon = epsilon;
    k.max_samples = max_samples;
    k.seed = seed;
    return k;
}

void RunConfig::validate() const {
    if (n_particles < 1) fail("chain.n_particles", "must be >= 1");
    if (alpha < 0) fail("chain.alpha", "must be >= 0");
    if (beta < 0) fail("chain.beta", "must be >= 0");
    if (alpha > 0 && beta == 0) fail("chain.beta", "must be > 0 when alpha > 0");
    if (!allow_unequal && alpha != beta)
        fail("chain.alpha", "alpha != beta requires chain.allow_unequal = true");
    if (temperature <= 0) fail("sampler.temperature", "must be positive");
    if (n_beads < 1) fail("sampler.n_beads", "must be >= 1");
    if (dt && *dt <= 0) fail("sampler.dt", "must be positive");
    if (n_burn && *n_burn < 0) fail("sampler.n_burn", "must be >= 0");
    if (stride && *stride < 1) fail("sampler.stride", "must be >= 1");
    if (n_samples < 1) fail("sampler.n_samples", "must be >= 1");
    if (m_chain < 2) fail("thermostat.m_chain", "must be >= 2");
    if (tau_tilde && *tau_tilde <= 0) fail("thermostat.tau_tilde", "must be positive");
    if (n_respa < 1) fail("thermostat.n_respa", "must be >= 1");
    if (n_sy != 7) fail("thermostat.n_sy", "only the 7-stage order-6 scheme is supported");
    if (rpmd_t_max && *rpmd_t_max <= 0) fail("rpmd.t_max", "must be positive");
    if (n_times < 2) fail("rpmd.n_times", "must be >= 2");
    if (rpmd_dt && *rpmd_dt <= 0) fail("rpmd.dt", "must be positive");
    if (epsilon <= 0 || epsilon >= 1) fail("rpmd.epsilon", "must lie in (0,1)");
    if (max_samples < 0) fail("rpmd.max_samples", "must be >= 0");
    if (bins < 0) fail("estimators.bins", "must be >= 0");
    for (int j : subset)
        if (j < 1 || j > n_particles) fail("estimators.subset", "index out of range");
    if (subset.size() > 3) fail("estimators.subset", "at most 3 particles");
    if (kappa_max <= 0) fail("estimators.kappa_max", "must be positive");
    if (n_kappa < 2) fail("estimators.n_kappa", "must be >= 2");
    if (q_max <= 0) fail("oracle.q_max", "must be positive");
    if (n_q < 2) fail("oracle.n_q", "must be >= 2");
    if (oracle_t_min <= 0 || oracle_t_max <= oracle_t_min)
        fail("oracle.t_min", "need 0 < t_min < t_max");
    if (oracle_n_t < 2) fail("oracle.n_t", "must be >= 2");
    if (directory.empty()) fail("output.directory", "must not be empty");
    // cross-checks that need a constructed spec
    chain_spec();
    parse_observable(observable, n_particles);
}

}  // namespace fpu
