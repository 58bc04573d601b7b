#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpu/chain.hpp"
#include "fpu/ring_polymer.hpp"
#include "fpu/sampler.hpp"
#include "fpu/stats.hpp"

namespace fpu {

// Linear configurational observable A(x) = coeff . x.  Correlators are only
// defined for this family (the short-time expansion is reliable to sixth
// order for linear operators only), so nonlinearity is unrepresentable by
// construction; parse_observable rejects anything else.
struct Observable {
    std::string id;
    std::vector<double> coeff;
};

Observable position_observable(int n_particles, int j);           // id "q:j"
Observable mode_observable(const ModeBasis& basis, int j);        // id "eta:j"
Observable parse_observable(const std::string& id, int n_particles);

// -P^2 T^2 (2 q^k - q^{k-1} - q^{k+1}) - dV(q^k)/dq, the dynamics convention
void rpmd_forces(const BeadMatrix& q, double T, const ChainSpec& spec, BeadMatrix& f);

// One velocity-Verlet step of the primitive ring polymer.
void rpmd_step(RingPolymerState& state, double T, const ChainSpec& spec, double dt,
               BeadMatrix& force_buf);

// Conservative default timestep: a tenth of the fastest ring-polymer
// normal-mode period over 2 pi.
double rpmd_default_dt(const ModeBasis& basis, double T, int p_beads);

struct ZetaEstimate {
    double value = 0.0;
    double se = 0.0;
};

// Static Taylor coefficients of the position autocorrelation at site j:
//   zeta0 = <q_{j,P}^2>, zeta2 = T (exact), zeta4 = <F_{j,P}^2>,
//   zeta6 = T <(dF/dq_j)^2 + (dF/dq_{j-1})^2 + (dF/dq_{j+1})^2>.
struct ZetaSet {
    ZetaEstimate zeta0, zeta2, zeta4, zeta6;
    int site = 0;
    double temperature = 0.0;
};

// zeta2 is returned as the analytic constant T with zero error bar; the
// others are Monte-Carlo means with blocked standard errors.  zeta4 uses the
// single-anchor estimator (1/P) sum_k F^k F^1; zeta6 averages the stiffness
// form over beads.
ZetaSet zeta_coefficients(const SampleSet& samples, const ChainSpec& spec, int j);

// test oracles: the same coefficients through independent estimator algebra
ZetaEstimate zeta4_double_sum(const SampleSet& samples, const ChainSpec& spec, int j);
ZetaEstimate zeta6_single_bead(const SampleSet& samples, const ChainSpec& spec, int j);

// Monte-Carlo cross-check of the zeta2 identity: <(p_{j,P})^2> over momenta
// drawn Maxwell at temperature P T must agree with T.
MeanSe zeta2_sampling_check(long n_draws, int p_beads, double T, std::uint64_t seed);

struct CorrelationSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> stderrs;
    std::string observable_id;
    int n = 0, p = 0;
    double temperature = 0.0, alpha = 0.0, beta = 0.0;
    std::optional<ZetaSet> zeta;  // filled for position observables
};

struct KuboOptions {
    double t_max = 0.0;              // 0: validity horizon at epsilon
    int n_times = 64;
    std::optional<double> dt;        // empty: rpmd_default_dt
    double epsilon = 0.1;            // horizon tolerance used when t_max == 0
    long max_samples = 0;            // 0: use every snapshot
    std::uint64_t seed = 0;          // 0: reuse the archive seed
    bool time_reversed = false;      // propagate to -t (symmetry diagnostics)
};

// Kubo-transformed autocorrelation estimated over a sampled ensemble: for
// each snapshot, momenta are resampled Maxwell at P T from a stream derived
// from (seed, sample index), the polymer is propagated by velocity Verlet
// with no thermostat, and bead-averaged A_P(0) A_P(t) is accumulated.
CorrelationSeries kubo_autocorrelation(const SampleSet& samples, const ChainSpec& spec,
                                       const Observable& obs, const KuboOptions& opt);

// several observables sharing one trajectory sweep
std::vector<CorrelationSeries> kubo_autocorrelation_multi(
    const SampleSet& samples, const ChainSpec& spec,
    std::span<const Observable> observables, const KuboOptions& opt);

// T6(t) = zeta0 - zeta2 t^2/2 + zeta4 t^4/24 - zeta6 t^6/720
std::vector<double> t6_expansion(const ZetaSet& zeta, std::span<const double> times);

// Horizon within which the sixth-order truncation tracks cos(omega_j t) to
// within epsilon for every mode; the stiffest mode reaches the bound first.
double validity_horizon(double epsilon, const ModeBasis& basis);

}  // namespace fpu
