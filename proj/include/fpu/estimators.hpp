#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fpu/chain.hpp"
#include "fpu/sampler.hpp"
#include "fpu/stats.hpp"

namespace fpu {

struct Axis {
    double lo = 0.0;
    double width = 0.0;
    int bins = 0;
    double center(int b) const { return lo + (b + 0.5) * width; }
    double hi() const { return lo + width * bins; }
};

// Normalized multivariate histogram over a subset of particles, accumulated
// over the bead-augmented sample cloud {q_{j in J}^k : snapshots x beads}.
struct DistributionEstimate {
    std::vector<int> subset;  // particle indices, 1-based, size <= 3
    std::vector<Axis> axes;
    std::vector<double> density;  // row-major over axes; sum * bin_volume = 1
    long count = 0;
    // per-bead sub-histograms on the same grid (1-D only), for the
    // replica-equivalence diagnostic
    std::vector<std::vector<double>> per_bead;

    int dim() const { return int(axes.size()); }
    double bin_volume() const;
    double total_mass() const;  // integral of density, 1 after normalization
};

// bins = 0 selects Freedman-Diaconis binning per axis, capped at 128 (1-D),
// 64 (2-D) or 32 (3-D).  Subsets larger than 3 are rejected.
DistributionEstimate estimate_distribution(const SampleSet& samples,
                                           std::span<const int> subset, int bins = 0);

// Bin-sum along the axis of one retained particle; normalization survives.
DistributionEstimate marginalize(const DistributionEstimate& dist, int drop_particle);

// <prod_i q_{J_i}^{powers_i}> over snapshots and beads, blocked stderr
MeanSe sample_moment(const SampleSet& samples, std::span<const int> subset,
                     std::span<const int> powers);

// mean over snapshots and beads of an arbitrary function of the subset
// coordinates; the zeta6 distribution-integral identity rests on this
MeanSe sample_functional(const SampleSet& samples, std::span<const int> subset,
                         const std::function<double(std::span<const double>)>& f);

// the same moment integrated against the histogram
double histogram_moment(const DistributionEstimate& dist, std::span<const int> powers);

// g(q) = (1/N) sum_j Q_j(q): all particles pooled into one histogram
DistributionEstimate total_density(const SampleSet& samples, int bins = 0);

// Boltzmann curve of the bare wall potential, rho(q) = e^{-V(q)/T} / Z with Z
// from adaptive quadrature; returned on the supplied grid.
std::vector<double> wall_distribution(std::span<const double> q_grid, double T,
                                      const ChainSpec& spec);

// S(kappa) = integral e^{i kappa q} dQ(q) of a 1-D histogram; S(0) = 1
std::vector<std::complex<double>> structure_factor(const DistributionEstimate& dist,
                                                   std::span<const double> kappa_grid);

struct ForceFieldSection {
    int site = 0;
    int bead = 0;
    std::vector<double> q;  // q_j^{k*} per snapshot
    std::vector<double> f;  // bead-averaged force estimator per snapshot
    // analytic wall envelope for boundary sites (empty otherwise)
    std::vector<double> envelope_q;
    std::vector<double> envelope_f;
};

// Scatter of (q_j^{k*}, F_j) with F_j = -(1/P) sum_k dV/dq_j^k; for j = 1 and
// j = N the wall-force envelopes -V'(q) and V'(-q) are attached.
ForceFieldSection force_sections(const SampleSet& samples, const ChainSpec& spec, int j,
                                 int bead_select = 1);

// KS comparison of Q_j(q) against Q_{N+1-j}(-q), single-bead samples
KsResult mirror_symmetry_ks(const SampleSet& samples, int j, int bead = 1,
                            double significance = 0.01);

// KS of every bead's sample against bead 1
std::vector<KsResult> replica_equivalence_ks(const SampleSet& samples, int j,
                                             double significance = 0.01);

// raw single-particle samples (one bead, or bead = 0 for all beads pooled)
std::vector<double> particle_samples(const SampleSet& samples, int j, int bead);

}  // namespace fpu
