#pragma once

#include <span>
#include <vector>

namespace fpu {

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // population variance about the sample mean

// Standard error of the mean from non-overlapping block averages.  Blocking
// absorbs serial correlation of the series; n_blocks is capped so every block
// holds at least two points.
double blocked_stderr(std::span<const double> x, int n_blocks = 32);

struct MeanSe {
    double value = 0.0;
    double se = 0.0;
};

MeanSe mean_with_se(std::span<const double> x, int n_blocks = 32);

// normalized autocorrelation rho(lag) for lag = 0..max_lag
std::vector<double> autocorrelation(std::span<const double> x, long max_lag);

// first lag with |rho| below the threshold (max_lag if never reached)
long decorrelation_lag(std::span<const double> x, double threshold, long max_lag);

// exponential autocorrelation time estimate: first 1/e crossing of rho
long autocorrelation_time(std::span<const double> x, long max_lag);

struct KsResult {
    double statistic = 0.0;  // sup |F1 - F2|
    double critical = 0.0;   // threshold at the requested significance
    long n1 = 0, n2 = 0;
    bool pass = false;  // statistic < critical
};

// Two-sample Kolmogorov-Smirnov test; significance defaults to the 1% level.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                       double significance = 0.01);

}  // namespace fpu
