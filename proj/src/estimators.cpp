#include "fpu/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fpu/quadrature.hpp"

namespace fpu {

double DistributionEstimate::bin_volume() const {
    double v = 1.0;
    for (const auto& ax : axes) v *= ax.width;
    return v;
}

double DistributionEstimate::total_mass() const {
    double s = 0.0;
    for (double d : density) s += d;
    return s * bin_volume();
}

namespace {

int fd_bins(std::vector<double>& values, int cap) {
    const size_t n = values.size();
    if (n < 4) return 8;
    const size_t q1 = n / 4, q3 = (3 * n) / 4;
    std::nth_element(values.begin(), values.begin() + q1, values.end());
    const double v1 = values[q1];
    std::nth_element(values.begin(), values.begin() + q3, values.end());
    const double v3 = values[q3];
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double range = *mx - *mn;
    const double iqr = v3 - v1;
    if (range <= 0.0) return 8;
    if (iqr <= 0.0) return cap;
    const double width = 2.0 * iqr / std::cbrt(double(n));
    return int(std::clamp(std::ceil(range / width), 8.0, double(cap)));
}

Axis make_axis(std::span<const double> values, int bins) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    double lo = *mn, hi = *mx;
    if (hi <= lo) {  // degenerate data, give it a token span
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 1e-9 * (hi - lo);
    lo -= pad;
    hi += pad;
    return {lo, (hi - lo) / bins, bins};
}

inline int bin_of(const Axis& ax, double v) {
    return std::clamp(int((v - ax.lo) / ax.width), 0, ax.bins - 1);
}

}  // namespace

DistributionEstimate estimate_distribution(const SampleSet& samples,
                                           std::span<const int> subset, int bins) {
    const int d = int(subset.size());
    if (d < 1) throw std::invalid_argument("estimate_distribution: empty subset");
    if (d > 3)
        throw std::invalid_argument(
            "estimate_distribution: subsets larger than 3 exceed the histogram budget");
    const long ns = samples.n_samples();
    if (ns < 1) throw std::invalid_argument("estimate_distribution: empty sample set");
    for (int j : subset)
        if (j < 1 || j > samples.n)
            throw std::out_of_range("estimate_distribution: particle index out of range");

    const int p = samples.p;
    const long cloud = ns * p;
    const int cap = (d == 1) ? 128 : (d == 2 ? 64 : 32);

    DistributionEstimate out;
    out.subset.assign(subset.begin(), subset.end());
    out.axes.resize(d);
    std::vector<std::vector<double>> columns(d);
    for (int a = 0; a < d; ++a) {
        auto& col = columns[a];
        col.resize(cloud);
        long i = 0;
        for (long s = 0; s < ns; ++s)
            for (int k = 1; k <= p; ++k) col[i++] = samples.value(s, subset[a], k);
        int nb = bins;
        if (nb <= 0) {
            std::vector<double> scratch = col;
            nb = fd_bins(scratch, cap);
        }
        out.axes[a] = make_axis(col, std::min(nb, cap));
    }

    long total_bins = 1;
    for (const auto& ax : out.axes) total_bins *= ax.bins;
    std::vector<long> counts(total_bins, 0);
    std::vector<std::vector<long>> bead_counts;
    if (d == 1) bead_counts.assign(p, std::vector<long>(total_bins, 0));

    for (long s = 0; s < ns; ++s)
        for (int k = 1; k <= p; ++k) {
            long idx = 0;
            for (int a = 0; a < d; ++a)
                idx = idx * out.axes[a].bins + bin_of(out.axes[a], columns[a][s * p + (k - 1)]);
            counts[idx] += 1;
            if (d == 1) bead_counts[k - 1][idx] += 1;
        }

    out.count = cloud;
    out.density.resize(total_bins);
    const double vol = out.bin_volume();
    for (long b = 0; b < total_bins; ++b)
        out.density[b] = double(counts[b]) / (double(cloud) * vol);
    if (d == 1) {
        out.per_bead.resize(p);
        for (int k = 0; k < p; ++k) {
            out.per_bead[k].resize(total_bins);
            for (long b = 0; b < total_bins; ++b)
                out.per_bead[k][b] = double(bead_counts[k][b]) / (double(ns) * vol);
        }
    }
    return out;
}

DistributionEstimate marginalize(const DistributionEstimate& dist, int drop_particle) {
    const int d = dist.dim();
    if (d < 2) throw std::invalid_argument("marginalize: need at least two dimensions");
    int drop = -1;
    for (int a = 0; a < d; ++a)
        if (dist.subset[a] == drop_particle) drop = a;
    if (drop < 0) throw std::invalid_argument("marginalize: particle not in subset");

    DistributionEstimate out;
    for (int a = 0; a < d; ++a)
        if (a != drop) {
            out.subset.push_back(dist.subset[a]);
            out.axes.push_back(dist.axes[a]);
        }
    long total = 1;
    for (const auto& ax : out.axes) total *= ax.bins;
    out.density.assign(total, 0.0);
    out.count = dist.count;

    // row-major walk of the source, accumulating with the dropped-axis width
    std::vector<int> idx(d, 0);
    const long src_total = long(dist.density.size());
    for (long b = 0; b < src_total; ++b) {
        long rem = b;
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = int(rem % dist.axes[a].bins);
            rem /= dist.axes[a].bins;
        }
        long dst = 0;
        for (int a = 0; a < d; ++a)
            if (a != drop) dst = dst * dist.axes[a].bins + idx[a];
        out.density[dst] += dist.density[b] * dist.axes[drop].width;
    }
    return out;
}

MeanSe sample_moment(const SampleSet& samples, std::span<const int> subset,
                     std::span<const int> powers) {
    if (subset.size() != powers.size())
        throw std::invalid_argument("sample_moment: subset/powers size mismatch");
    for (int pw : powers)
        if (pw < 0) throw std::invalid_argument("sample_moment: powers must be >= 0");
    return sample_functional(samples, subset,
                             [powers](std::span<const double> q) {
                                 double v = 1.0;
                                 for (size_t i = 0; i < q.size(); ++i)
                                     for (int e = 0; e < powers[i]; ++e) v *= q[i];
                                 return v;
                             });
}

MeanSe sample_functional(const SampleSet& samples, std::span<const int> subset,
                         const std::function<double(std::span<const double>)>& f) {
    const long ns = samples.n_samples();
    if (ns < 1) throw std::invalid_argument("sample_functional: empty sample set");
    for (int j : subset)
        if (j < 1 || j > samples.n)
            throw std::out_of_range("sample_functional: particle index out of range");
    const int p = samples.p;
    std::vector<double> q(subset.size());
    std::vector<double> y(ns);
    for (long s = 0; s < ns; ++s) {
        double acc = 0.0;
        for (int k = 1; k <= p; ++k) {
            for (size_t a = 0; a < subset.size(); ++a) q[a] = samples.value(s, subset[a], k);
            acc += f(q);
        }
        y[s] = acc / double(p);
    }
    return mean_with_se(y, 32);
}

double histogram_moment(const DistributionEstimate& dist, std::span<const int> powers) {
    if (int(powers.size()) != dist.dim())
        throw std::invalid_argument("histogram_moment: powers size mismatch");
    const double vol = dist.bin_volume();
    const int d = dist.dim();
    std::vector<int> idx(d, 0);
    double s = 0.0;
    for (long b = 0; b < long(dist.density.size()); ++b) {
        long rem = b;
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = int(rem % dist.axes[a].bins);
            rem /= dist.axes[a].bins;
        }
        double w = dist.density[b] * vol;
        for (int a = 0; a < d; ++a)
            for (int e = 0; e < powers[a]; ++e) w *= dist.axes[a].center(idx[a]);
        s += w;
    }
    return s;
}

DistributionEstimate total_density(const SampleSet& samples, int bins) {
    const long ns = samples.n_samples();
    if (ns < 1) throw std::invalid_argument("total_density: empty sample set");
    const int n = samples.n, p = samples.p;
    std::vector<double> pool;
    pool.reserve(size_t(ns) * n * p);
    for (long s = 0; s < ns; ++s)
        for (int k = 1; k <= p; ++k)
            for (int j = 1; j <= n; ++j) pool.push_back(samples.value(s, j, k));

    DistributionEstimate out;
    out.subset = {0};  // pooled over all particles
    int nb = bins;
    if (nb <= 0) {
        std::vector<double> scratch = pool;
        nb = fd_bins(scratch, 128);
    }
    out.axes = {make_axis(pool, std::min(nb, 128))};
    std::vector<long> counts(out.axes[0].bins, 0);
    for (double v : pool) counts[bin_of(out.axes[0], v)] += 1;
    out.count = long(pool.size());
    out.density.resize(out.axes[0].bins);
    for (size_t b = 0; b < counts.size(); ++b)
        out.density[b] = double(counts[b]) / (double(pool.size()) * out.axes[0].width);
    return out;
}

std::vector<double> wall_distribution(std::span<const double> q_grid, double T,
                                      const ChainSpec& spec) {
    if (T <= 0.0) throw std::invalid_argument("wall_distribution: T must be positive");
    auto weight = [&](double q) { return std::exp(-pair_potential(q, spec) / T); };
    const double z = integrate_decaying(weight, 0.0, std::max(1.0, 4.0 * std::sqrt(T)), 1e-10);
    std::vector<double> rho(q_grid.size());
    for (size_t i = 0; i < q_grid.size(); ++i) rho[i] = weight(q_grid[i]) / z;
    return rho;
}

std::vector<std::complex<double>> structure_factor(const DistributionEstimate& dist,
                                                   std::span<const double> kappa_grid) {
    if (dist.dim() != 1)
        throw std::invalid_argument("structure_factor: 1-D distributions only");
    const Axis& ax = dist.axes[0];
    std::vector<std::complex<double>> s(kappa_grid.size());
    for (size_t i = 0; i < kappa_grid.size(); ++i) {
        std::complex<double> acc = 0.0;
        for (int b = 0; b < ax.bins; ++b) {
            const double w = dist.density[b] * ax.width;
            const double phase = kappa_grid[i] * ax.center(b);
            acc += w * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        s[i] = acc;
    }
    return s;
}

ForceFieldSection force_sections(const SampleSet& samples, const ChainSpec& spec, int j,
                                 int bead_select) {
    const int n = samples.n, p = samples.p;
    if (j < 1 || j > n) throw std::out_of_range("force_sections: site index out of range");
    if (bead_select < 1 || bead_select > p)
        throw std::out_of_range("force_sections: bead index out of range");
    const long ns = samples.n_samples();

    ForceFieldSection out;
    out.site = j;
    out.bead = bead_select;
    out.q.resize(ns);
    out.f.resize(ns);
    for (long s = 0; s < ns; ++s) {
        out.q[s] = samples.value(s, j, bead_select);
        double acc = 0.0;
        for (int k = 1; k <= p; ++k) acc += site_force(samples.bead(s, k), j, spec);
        out.f[s] = acc / double(p);
    }
    if (j == 1 || j == n) {
        const auto [mn, mx] = std::minmax_element(out.q.begin(), out.q.end());
        const int pts = 256;
        out.envelope_q.resize(pts);
        out.envelope_f.resize(pts);
        for (int i = 0; i < pts; ++i) {
            const double q = *mn + (*mx - *mn) * double(i) / (pts - 1);
            out.envelope_q[i] = q;
            // left wall pushes via -V'(q); the right wall via V'(-q)
            out.envelope_f[i] = (j == 1) ? -pair_force(q, spec) : pair_force(-q, spec);
        }
    }
    return out;
}

std::vector<double> particle_samples(const SampleSet& samples, int j, int bead) {
    const int n = samples.n, p = samples.p;
    if (j < 1 || j > n) throw std::out_of_range("particle_samples: index out of range");
    if (bead < 0 || bead > p) throw std::out_of_range("particle_samples: bead out of range");
    const long ns = samples.n_samples();
    std::vector<double> out;
    if (bead == 0) {
        out.reserve(size_t(ns) * p);
        for (long s = 0; s < ns; ++s)
            for (int k = 1; k <= p; ++k) out.push_back(samples.value(s, j, k));
    } else {
        out.reserve(ns);
        for (long s = 0; s < ns; ++s) out.push_back(samples.value(s, j, bead));
    }
    return out;
}

KsResult mirror_symmetry_ks(const SampleSet& samples, int j, int bead, double significance) {
    const int n = samples.n;
    auto a = particle_samples(samples, j, bead);
    auto b = particle_samples(samples, n + 1 - j, bead);
    for (double& v : b) v = -v;
    return ks_two_sample(a, b, significance);
}

std::vector<KsResult> replica_equivalence_ks(const SampleSet& samples, int j,
                                             double significance) {
    const auto ref = particle_samples(samples, j, 1);
    std::vector<KsResult> out;
    for (int k = 2; k <= samples.p; ++k)
        out.push_back(ks_two_sample(ref, particle_samples(samples, j, k), significance));
    return out;
}

}  // namespace fpu
