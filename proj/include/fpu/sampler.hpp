#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpu/chain.hpp"
#include "fpu/ring_polymer.hpp"
#include "fpu/thermostat.hpp"

namespace fpu {

// Relative drift bound on the conserved energy that every production
// trajectory must satisfy; the pre-run tuner raises n_respa and halves dt
// until a short probe passes it.
inline constexpr double kDriftTarget = 1e-6;

struct SamplerConfig {
    ChainSpec chain;
    double temperature = 1.0;
    int n_beads = 1;
    std::optional<double> dt;      // empty: auto (stability default + drift tuning)
    std::optional<long> n_burn;    // empty: auto (10x potential-energy autocorrelation)
    std::optional<long> stride;    // empty: auto (potential-energy decorrelation)
    long n_samples = 5000;
    std::uint64_t seed = 1;
    NhcParams nhc;

    void validate() const;
    double resolved_tau_tilde() const;  // default: one period of the slowest mode
    double stability_dt() const;        // 0.05 / max(1, 2 sqrt(P) T)
};

struct EquipartitionStats {
    std::vector<double> mean;  // <p^2/mu'> per dof, k-major
    std::vector<double> se;
    double worst_z = 0.0;  // max_i |mean_i - T| / se_i
};

struct SamplerRunInfo {
    double dt = 0.0;
    long n_burn = 0;
    long stride = 0;
    long total_steps = 0;
    double tau_tilde = 0.0;
    int n_respa = 0;
    double initial_energy = 0.0;     // H' right after initialization
    double production_ref = 0.0;     // H' at the start of sampling
    double max_drift = 0.0;          // max |H'(t)-ref|/|ref| over the snapshots
    double whole_run_drift = 0.0;    // same, measured against the initial value
    std::vector<double> energy_trace;  // H' at every snapshot
    EquipartitionStats equipartition;
    double elapsed_seconds = 0.0;
};

// Primitive-coordinate position snapshots plus run metadata.
struct SampleSet {
    int n = 0, p = 0;
    double temperature = 0.0;
    double alpha = 0.0, beta = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> snapshots;  // n_samples * (N*P), k-major per snapshot
    SamplerRunInfo info;

    long n_samples() const { return snapshots.empty() ? 0 : long(snapshots.size() / (size_t(n) * p)); }
    double value(long s, int j, int k) const {
        return snapshots[size_t(s) * (size_t(n) * p) + size_t(k - 1) * n + (j - 1)];
    }
    std::span<const double> snapshot(long s) const {
        return {snapshots.data() + size_t(s) * (size_t(n) * p), size_t(n) * p};
    }
    std::span<const double> bead(long s, int k) const {
        return {snapshots.data() + size_t(s) * (size_t(n) * p) + size_t(k - 1) * n, size_t(n)};
    }
};

// Thermostatted PIMD propagation in staging coordinates:
//   NHC(dt/2) . kick(dt/2) . drift(dt) . kick(dt/2) . NHC(dt/2)
// Positions start at zero displacement; momenta are Maxwell at T with masses
// mu'_k and thermostat momenta Maxwell with masses Q.
class PimdSampler {
  public:
    explicit PimdSampler(const SamplerConfig& cfg);

    // re-derives the initial state from the seed (bitwise reproducible)
    void init_state();
    void step();
    // thermostat-free kick/drift/kick, the symplectic core of step()
    void bare_step();
    // inject a state (staging coordinates and conjugate momenta)
    void set_state(std::span<const double> u, std::span<const double> p);
    SampleSet run();

    const RingPolymerState& state() const { return state_; }
    RingPolymerState primitive_state() const;
    double conserved() const;
    double potential_energy() const;  // (1/P) sum_k V(q^k)
    double dt() const { return dt_; }
    int n_respa() const { return nhc_ ? params_.n_respa : 0; }

  private:
    SamplerConfig cfg_;
    NhcParams params_;
    double tau_;
    double dt_ = 0.0;
    RingPolymerState state_;  // staged positions/momenta
    std::unique_ptr<NhcBank> nhc_;
    BeadMatrix forces_;       // staging-space potential force, cached
    BeadMatrix primitive_;    // scratch
    BeadMatrix force_scratch_;
    std::vector<double> spring_k_;  // mu_k P T^2 per dof
    std::vector<double> inv_mu_;    // 1/mu'_k per dof

    void refresh_forces();
    void kick(double h);
    void drift(double h);
    void tune();  // resolves dt / n_respa against the drift target
    double probe_drift(long steps);
};

// Snapshot archive: two text header lines (magic + JSON metadata), one layout
// line, then raw little-endian float64 records, N*P per snapshot in k-major
// order.  Written atomically (temp file + rename).
void write_archive(const std::string& path, const SampleSet& set,
                   const std::string& config_echo = "");
SampleSet read_archive(const std::string& path);
std::string archive_config_echo(const std::string& path);

}  // namespace fpu
