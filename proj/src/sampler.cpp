#include "fpu/sampler.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "fpu/errors.hpp"
#include "fpu/rng.hpp"
#include "fpu/stats.hpp"

namespace fpu {

using nlohmann::json;

void SamplerConfig::validate() const {
    if (temperature <= 0.0)
        throw std::invalid_argument("SamplerConfig: temperature must be positive");
    if (n_beads < 1) throw std::invalid_argument("SamplerConfig: n_beads must be >= 1");
    if (dt && *dt <= 0.0) throw std::invalid_argument("SamplerConfig: dt must be positive");
    if (stride && *stride < 1) throw std::invalid_argument("SamplerConfig: stride must be >= 1");
    if (n_burn && *n_burn < 0) throw std::invalid_argument("SamplerConfig: n_burn must be >= 0");
    if (n_samples < 1) throw std::invalid_argument("SamplerConfig: n_samples must be >= 1");
    nhc.validate();
}

double SamplerConfig::resolved_tau_tilde() const {
    if (nhc.tau_tilde > 0.0) return nhc.tau_tilde;
    const double w1 = 2.0 * std::sin(std::numbers::pi / (2.0 * (chain.n_particles + 1)));
    return 2.0 * std::numbers::pi / w1;
}

double SamplerConfig::stability_dt() const {
    return 0.05 / std::max(1.0, 2.0 * std::sqrt(double(n_beads)) * temperature);
}

PimdSampler::PimdSampler(const SamplerConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    params_ = cfg_.nhc;
    tau_ = cfg_.resolved_tau_tilde();
    params_.tau_tilde = tau_;
    const int n = cfg_.chain.n_particles, p = cfg_.n_beads;
    state_ = RingPolymerState(n, p, Representation::staged);
    forces_ = BeadMatrix(n, p);
    primitive_ = BeadMatrix(n, p);
    const StagingMasses masses(p);
    spring_k_.resize(size_t(n) * p);
    inv_mu_.resize(size_t(n) * p);
    const double t2p = double(p) * cfg_.temperature * cfg_.temperature;
    for (int k = 1; k <= p; ++k)
        for (int j = 0; j < n; ++j) {
            spring_k_[size_t(k - 1) * n + j] = masses.mu[k - 1] * t2p;
            inv_mu_[size_t(k - 1) * n + j] = 1.0 / masses.mu_prime[k - 1];
        }
    dt_ = cfg_.dt.value_or(cfg_.stability_dt());
    init_state();
}

void PimdSampler::init_state() {
    const int n = cfg_.chain.n_particles, p = cfg_.n_beads;
    const double T = cfg_.temperature;
    std::fill(state_.pos.a.begin(), state_.pos.a.end(), 0.0);
    Rng rp = substream(cfg_.seed, 0);
    const StagingMasses masses(p);
    for (int k = 1; k <= p; ++k) {
        const double sigma = std::sqrt(masses.mu_prime[k - 1] * T);
        for (int j = 1; j <= n; ++j) state_.mom(j, k) = sigma * rp.gauss();
    }
    nhc_ = std::make_unique<NhcBank>(n, p, T, params_);
    Rng rt = substream(cfg_.seed, 1);
    for (int g = 1; g <= params_.m_chain; ++g) {
        auto pe = nhc_->peta(g);
        for (int i = 0; i < nhc_->n_dof(); ++i)
            pe[i] = std::sqrt(nhc_->mass(i) * T) * rt.gauss();
    }
    refresh_forces();
}

void PimdSampler::refresh_forces() {
    unstage(state_.pos, primitive_);
    staging_forces(primitive_, cfg_.chain, forces_, force_scratch_);
}

void PimdSampler::kick(double h) {
    const size_t nd = state_.pos.size();
    double* p = state_.mom.a.data();
    const double* u = state_.pos.a.data();
    const double* f = forces_.a.data();
    const double* sk = spring_k_.data();
    for (size_t i = 0; i < nd; ++i) p[i] += h * (f[i] - sk[i] * u[i]);
}

void PimdSampler::drift(double h) {
    const size_t nd = state_.pos.size();
    double* u = state_.pos.a.data();
    const double* p = state_.mom.a.data();
    const double* im = inv_mu_.data();
    for (size_t i = 0; i < nd; ++i) u[i] += h * p[i] * im[i];
}

void PimdSampler::bare_step() {
    kick(0.5 * dt_);
    drift(dt_);
    refresh_forces();
    kick(0.5 * dt_);
}

void PimdSampler::set_state(std::span<const double> u, std::span<const double> p) {
    if (u.size() != state_.pos.size() || p.size() != state_.mom.size())
        throw std::invalid_argument("PimdSampler::set_state: bad size");
    std::copy(u.begin(), u.end(), state_.pos.a.begin());
    std::copy(p.begin(), p.end(), state_.mom.a.begin());
    refresh_forces();
}

void PimdSampler::step() {
    const double T = cfg_.temperature;
    nhc_->half_step(state_.mom.a, T, dt_);
    kick(0.5 * dt_);
    drift(dt_);
    // checked before the forces touch the new positions: blow-ups show up in
    // the drift first, and the thermostat can mask them again within the step.
    // negated <= so NaN also trips the flag
    bool bad = false;
    for (double v : state_.pos.a)
        if (!(std::abs(v) <= 1e8)) bad = true;
    if (bad)
        throw NumericalError("PimdSampler: non-finite or runaway coordinates (dt=" +
                             std::to_string(dt_) + ", T=" + std::to_string(T) + ")");
    refresh_forces();
    kick(0.5 * dt_);
    nhc_->half_step(state_.mom.a, T, dt_);
}

RingPolymerState PimdSampler::primitive_state() const {
    RingPolymerState out(state_.pos.n, state_.pos.p, Representation::primitive);
    unstage(state_.pos, out.pos);
    return out;
}

double PimdSampler::conserved() const {
    return conserved_energy(state_, *nhc_, cfg_.temperature, cfg_.chain);
}

double PimdSampler::potential_energy() const {
    BeadMatrix q;
    unstage(state_.pos, q);
    double v = 0.0;
    for (int k = 1; k <= q.p; ++k) v += chain_potential(q.bead(k), cfg_.chain);
    return v / double(q.p);
}

double PimdSampler::probe_drift(long steps) {
    init_state();
    const double h0 = conserved();
    double drift = 0.0;
    for (long s = 1; s <= steps; ++s) {
        step();
        if (s % 20 == 0 || s == steps) {
            const double h = conserved();
            drift = std::max(drift, std::abs(h - h0) / std::abs(h0));
        }
    }
    return drift;
}

void PimdSampler::tune() {
    if (cfg_.dt) {  // explicit timestep is taken as-is
        dt_ = *cfg_.dt;
        init_state();
        return;
    }
    dt_ = cfg_.stability_dt();
    const long probe_steps = 4000;
    bool respa_raised = false;
    // the production drift can run ~2x above a short probe, so demand margin
    for (int attempt = 0; attempt < 10; ++attempt) {
        const double d = probe_drift(probe_steps);
        if (d < 0.25 * kDriftTarget) break;
        if (!respa_raised) {
            params_.n_respa *= 2;
            respa_raised = true;
        } else {
            dt_ *= 0.5;
        }
    }
    init_state();
}

SampleSet PimdSampler::run() {
    const auto t_begin = std::chrono::steady_clock::now();
    const int n = cfg_.chain.n_particles, p = cfg_.n_beads;
    const size_t dof = size_t(n) * p;

    tune();
    SamplerRunInfo info;
    info.dt = dt_;
    info.tau_tilde = tau_;
    info.n_respa = params_.n_respa;
    info.initial_energy = conserved();

    long total_steps = 0;
    double whole_drift = 0.0;
    auto track_whole = [&]() {
        const double h = conserved();
        whole_drift = std::max(whole_drift,
                               std::abs(h - info.initial_energy) / std::abs(info.initial_energy));
    };

    // settle, then measure the potential-energy autocorrelation on the fly
    long stride = cfg_.stride.value_or(0);
    long burn_done = 0;
    const long settle = 2000;
    for (long s = 0; s < settle; ++s) step();
    burn_done += settle;
    total_steps += settle;
    track_whole();

    long burn_target;
    if (!cfg_.n_burn || !cfg_.stride) {
        const long probe = 6000;
        std::vector<double> pe(probe);
        for (long s = 0; s < probe; ++s) {
            step();
            pe[s] = potential_energy();
        }
        burn_done += probe;
        total_steps += probe;
        track_whole();
        const long tau_pe = autocorrelation_time(pe, probe / 2);
        if (!cfg_.stride)
            stride = std::clamp<long>(decorrelation_lag(pe, 0.1, probe / 2), 5, 5000);
        burn_target = cfg_.n_burn.value_or(std::max<long>(10 * tau_pe, settle));
    } else {
        burn_target = *cfg_.n_burn;
        stride = *cfg_.stride;
    }
    for (long s = burn_done; s < burn_target; ++s) {
        step();
        ++total_steps;
        if (s % 1000 == 0) track_whole();
    }
    info.n_burn = std::max(burn_target, burn_done);
    info.stride = stride;

    // production
    SampleSet set;
    set.n = n;
    set.p = p;
    set.temperature = cfg_.temperature;
    set.alpha = cfg_.chain.alpha;
    set.beta = cfg_.chain.beta;
    set.seed = cfg_.seed;
    set.snapshots.reserve(size_t(cfg_.n_samples) * dof);

    info.production_ref = conserved();
    info.energy_trace.reserve(cfg_.n_samples);
    const int n_blocks = int(std::clamp<long>(cfg_.n_samples / 2, 1, 32));
    std::vector<double> block_sum(dof * n_blocks, 0.0);
    std::vector<long> block_count(n_blocks, 0);

    for (long s = 0; s < cfg_.n_samples; ++s) {
        for (long u = 0; u < stride; ++u) step();
        total_steps += stride;
        unstage(state_.pos, primitive_);
        set.snapshots.insert(set.snapshots.end(), primitive_.a.begin(), primitive_.a.end());
        const double h = conserved();
        info.energy_trace.push_back(h);
        info.max_drift = std::max(info.max_drift,
                                  std::abs(h - info.production_ref) / std::abs(info.production_ref));
        const int b = std::min<int>(int(s * n_blocks / cfg_.n_samples), n_blocks - 1);
        block_count[b] += 1;
        const double* pm = state_.mom.a.data();
        double* bs = block_sum.data() + size_t(b) * dof;
        for (size_t i = 0; i < dof; ++i) bs[i] += pm[i] * pm[i] * inv_mu_[i];
    }
    track_whole();
    info.whole_run_drift = std::max(whole_drift, info.max_drift);
    info.total_steps = total_steps;

    // equipartition: <p^2/mu'> per dof with blocked standard errors
    info.equipartition.mean.resize(dof);
    info.equipartition.se.resize(dof);
    for (size_t i = 0; i < dof; ++i) {
        std::vector<double> bm;
        bm.reserve(n_blocks);
        double tot = 0.0;
        long cnt = 0;
        for (int b = 0; b < n_blocks; ++b) {
            if (block_count[b] == 0) continue;
            bm.push_back(block_sum[size_t(b) * dof + i] / double(block_count[b]));
            tot += block_sum[size_t(b) * dof + i];
            cnt += block_count[b];
        }
        info.equipartition.mean[i] = tot / double(cnt);
        if (bm.size() > 1) {
            double g = 0.0;
            for (double v : bm) g += v;
            g /= double(bm.size());
            double var = 0.0;
            for (double v : bm) var += (v - g) * (v - g);
            var /= double(bm.size() - 1);
            info.equipartition.se[i] = std::sqrt(var / double(bm.size()));
        } else {
            info.equipartition.se[i] = 0.0;
        }
        if (info.equipartition.se[i] > 0.0) {
            const double z =
                std::abs(info.equipartition.mean[i] - cfg_.temperature) / info.equipartition.se[i];
            info.equipartition.worst_z = std::max(info.equipartition.worst_z, z);
        }
    }

    info.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    set.info = std::move(info);
    return set;
}

// ---------------------------------------------------------------------------
// archive IO

namespace {
constexpr const char* kMagic = "FPU-SNAPSHOT-ARCHIVE v1";
constexpr const char* kLayout =
    "binary float64 little-endian, n_samples records of N*P values, k-major (i = N(k-1)+j)";
}  // namespace

void write_archive(const std::string& path, const SampleSet& set,
                   const std::string& config_echo) {
    json meta;
    meta["schema"] = "fpu.snapshots/1";
    meta["n_particles"] = set.n;
    meta["n_beads"] = set.p;
    meta["temperature"] = set.temperature;
    meta["alpha"] = set.alpha;
    meta["beta"] = set.beta;
    meta["seed"] = set.seed;
    meta["n_samples"] = set.n_samples();
    meta["dt"] = set.info.dt;
    meta["n_burn"] = set.info.n_burn;
    meta["stride"] = set.info.stride;
    meta["tau_tilde"] = set.info.tau_tilde;
    meta["n_respa"] = set.info.n_respa;
    meta["total_steps"] = set.info.total_steps;
    meta["initial_energy"] = set.info.initial_energy;
    meta["production_ref"] = set.info.production_ref;
    meta["max_drift"] = set.info.max_drift;
    meta["whole_run_drift"] = set.info.whole_run_drift;
    meta["energy_trace"] = set.info.energy_trace;
    meta["equipartition_mean"] = set.info.equipartition.mean;
    meta["equipartition_se"] = set.info.equipartition.se;
    meta["equipartition_worst_z"] = set.info.equipartition.worst_z;
    meta["elapsed_seconds"] = set.info.elapsed_seconds;
    if (!config_echo.empty()) meta["config_echo"] = config_echo;

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("write_archive: cannot open " + tmp);
        out << kMagic << "\n" << meta.dump() << "\n" << kLayout << "\n";
        out.write(reinterpret_cast<const char*>(set.snapshots.data()),
                  std::streamsize(set.snapshots.size() * sizeof(double)));
        if (!out) throw std::runtime_error("write_archive: write failed on " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_archive: rename to " + path + " failed");
}

namespace {
json read_archive_meta(std::ifstream& in, const std::string& path) {
    std::string magic, meta_line, layout;
    if (!std::getline(in, magic) || magic != kMagic)
        throw std::runtime_error("read_archive: bad magic in " + path);
    if (!std::getline(in, meta_line))
        throw std::runtime_error("read_archive: missing metadata in " + path);
    if (!std::getline(in, layout))
        throw std::runtime_error("read_archive: missing layout line in " + path);
    return json::parse(meta_line);
}
}  // namespace

SampleSet read_archive(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_archive: cannot open " + path);
    const json meta = read_archive_meta(in, path);

    SampleSet set;
    set.n = meta.at("n_particles").get<int>();
    set.p = meta.at("n_beads").get<int>();
    set.temperature = meta.at("temperature").get<double>();
    set.alpha = meta.at("alpha").get<double>();
    set.beta = meta.at("beta").get<double>();
    set.seed = meta.at("seed").get<std::uint64_t>();
    set.info.dt = meta.at("dt").get<double>();
    set.info.n_burn = meta.at("n_burn").get<long>();
    set.info.stride = meta.at("stride").get<long>();
    set.info.tau_tilde = meta.at("tau_tilde").get<double>();
    set.info.n_respa = meta.at("n_respa").get<int>();
    set.info.total_steps = meta.at("total_steps").get<long>();
    set.info.initial_energy = meta.at("initial_energy").get<double>();
    set.info.production_ref = meta.at("production_ref").get<double>();
    set.info.max_drift = meta.at("max_drift").get<double>();
    set.info.whole_run_drift = meta.at("whole_run_drift").get<double>();
    set.info.energy_trace = meta.at("energy_trace").get<std::vector<double>>();
    set.info.equipartition.mean = meta.at("equipartition_mean").get<std::vector<double>>();
    set.info.equipartition.se = meta.at("equipartition_se").get<std::vector<double>>();
    set.info.equipartition.worst_z = meta.at("equipartition_worst_z").get<double>();

    const long n_samples = meta.at("n_samples").get<long>();
    const size_t dof = size_t(set.n) * set.p;
    set.snapshots.resize(size_t(n_samples) * dof);
    in.read(reinterpret_cast<char*>(set.snapshots.data()),
            std::streamsize(set.snapshots.size() * sizeof(double)));
    if (in.gcount() != std::streamsize(set.snapshots.size() * sizeof(double)))
        throw std::runtime_error("read_archive: truncated record block in " + path);
    return set;
}

std::string archive_config_echo(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("archive_config_echo: cannot open " + path);
    const json meta = read_archive_meta(in, path);
    return meta.value("config_echo", std::string());
}

}  // namespace fpu
