#include "fpu/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpu {

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean: empty series");
    double s = 0.0;
    for (double v : x) s += v;
    return s / double(x.size());
}

double variance(std::span<const double> x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / double(x.size());
}

double blocked_stderr(std::span<const double> x, int n_blocks) {
    return mean_with_se(x, n_blocks).se;
}

MeanSe mean_with_se(std::span<const double> x, int n_blocks) {
    const long n = long(x.size());
    if (n == 0) throw std::invalid_argument("mean_with_se: empty series");
    if (n == 1) return {x[0], 0.0};
    const int nb = int(std::clamp<long>(n / 2, 2, n_blocks));
    const long per = n / nb;
    // trailing remainder (< per) is folded into the last block
    std::vector<double> bm(nb, 0.0);
    std::vector<long> bc(nb, 0);
    for (long i = 0; i < n; ++i) {
        const int b = std::min<int>(int(i / per), nb - 1);
        bm[b] += x[i];
        bc[b] += 1;
    }
    double g = 0.0;
    for (int b = 0; b < nb; ++b) {
        bm[b] /= double(bc[b]);
        g += bm[b];
    }
    g /= nb;
    double var = 0.0;
    for (int b = 0; b < nb; ++b) var += (bm[b] - g) * (bm[b] - g);
    var /= double(nb - 1);
    return {mean(x), std::sqrt(var / nb)};
}

std::vector<double> autocorrelation(std::span<const double> x, long max_lag) {
    const long n = long(x.size());
    if (n < 2) throw std::invalid_argument("autocorrelation: series too short");
    max_lag = std::clamp<long>(max_lag, 1, n - 1);
    const double m = mean(x);
    const double v = variance(x);
    std::vector<double> rho(max_lag + 1, 0.0);
    rho[0] = 1.0;
    if (v <= 0.0) return rho;
    for (long lag = 1; lag <= max_lag; ++lag) {
        double s = 0.0;
        for (long i = 0; i + lag < n; ++i) s += (x[i] - m) * (x[i + lag] - m);
        rho[lag] = s / (double(n - lag) * v);
    }
    return rho;
}

long decorrelation_lag(std::span<const double> x, double threshold, long max_lag) {
    const auto rho = autocorrelation(x, max_lag);
    for (long lag = 1; lag < long(rho.size()); ++lag)
        if (std::abs(rho[lag]) < threshold) return lag;
    return max_lag;
}

long autocorrelation_time(std::span<const double> x, long max_lag) {
    return decorrelation_lag(x, std::exp(-1.0), max_lag);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                       double significance) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const long n1 = long(sa.size()), n2 = long(sb.size());
    long i = 0, j = 0;
    double d = 0.0;
    while (i < n1 && j < n2) {
        const double v = std::min(sa[i], sb[j]);
        while (i < n1 && sa[i] <= v) ++i;
        while (j < n2 && sb[j] <= v) ++j;
        d = std::max(d, std::abs(double(i) / n1 - double(j) / n2));
    }
    // c(alpha) = sqrt(-ln(alpha/2)/2); 1.628 at the 1% level
    const double c = std::sqrt(-0.5 * std::log(significance / 2.0));
    KsResult r;
    r.statistic = d;
    r.critical = c * std::sqrt(double(n1 + n2) / (double(n1) * double(n2)));
    r.n1 = n1;
    r.n2 = n2;
    r.pass = d < r.critical;
    return r;
}

}  // namespace fpu
