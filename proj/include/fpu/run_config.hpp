#pragma once

#include <optional>
#include <string>

#include "fpu/rpmd.hpp"
#include "fpu/sampler.hpp"

namespace fpu {

// One declarative document for a whole run: chain, sampler, thermostat,
// correlator, estimator and oracle parameters.  Serialization is canonical
// (fixed key order, full-precision numbers), so parse -> serialize -> parse
// is the identity and the echoed text in run outputs re-runs bit-identically.
struct RunConfig {
    // [chain]
    int n_particles = 8;
    double alpha = 0.0;
    double beta = 0.0;
    bool allow_unequal = false;

    // [sampler]
    double temperature = 1.0;
    int n_beads = 1;
    std::optional<double> dt;
    std::optional<long> n_burn;
    std::optional<long> stride;
    long n_samples = 5000;
    std::uint64_t seed = 1;

    // [thermostat]
    int m_chain = 5;
    std::optional<double> tau_tilde;
    int n_respa = 5;
    int n_sy = 7;

    // [rpmd]
    std::string observable = "q:4";
    std::optional<double> rpmd_t_max;
    int n_times = 64;
    std::optional<double> rpmd_dt;
    double epsilon = 0.1;
    long max_samples = 0;

    // [estimators]
    int bins = 0;  // 0: Freedman-Diaconis
    std::vector<int> subset = {4};
    double kappa_max = 8.0;
    int n_kappa = 65;

    // [oracle]
    double q_max = 3.0;
    int n_q = 201;
    double oracle_t_min = 0.01;
    double oracle_t_max = 10.0;
    int oracle_n_t = 40;

    // [output]
    std::string directory = "run_output";

    ChainSpec chain_spec() const;
    SamplerConfig sampler_config() const;
    KuboOptions kubo_options() const;
    void validate() const;  // throws std::invalid_argument naming the field
};

// INI-style key = value document with [section] headers, '#' or ';' comments.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
std::string serialize_run_config(const RunConfig& cfg);

}  // namespace fpu
