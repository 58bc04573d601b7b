#include "fpu/harmonic_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fpu {

namespace {
void check_mode(const ModeBasis& basis, int j, const char* who) {
    if (j < 1 || j > basis.size())
        throw std::out_of_range(std::string(who) + ": mode index out of range");
}
void check_temperature(double T, const char* who) {
    if (T <= 0.0) throw std::invalid_argument(std::string(who) + ": T must be positive");
}
}  // namespace

double mode_variance_classical(const ModeBasis& basis, int j, double T) {
    check_mode(basis, j, "mode_variance_classical");
    check_temperature(T, "mode_variance_classical");
    const double w = basis.frequency(j);
    return T / (w * w);
}

double mode_variance_quantum(const ModeBasis& basis, int j, double T) {
    check_mode(basis, j, "mode_variance_quantum");
    check_temperature(T, "mode_variance_quantum");
    const double w = basis.frequency(j);
    return 1.0 / (2.0 * w * std::tanh(0.5 * w / T));
}

double mode_distribution(const ModeBasis& basis, std::span<const int> subset,
                         std::span<const double> eta, double T) {
    check_temperature(T, "mode_distribution");
    if (subset.size() != eta.size())
        throw std::invalid_argument("mode_distribution: subset/eta size mismatch");
    double d = 1.0;
    for (size_t m = 0; m < subset.size(); ++m) {
        check_mode(basis, subset[m], "mode_distribution");
        const double w = basis.frequency(subset[m]);
        const double th = std::tanh(0.5 * w / T);
        d *= std::sqrt(w * th / std::numbers::pi) * std::exp(-w * th * eta[m] * eta[m]);
    }
    return d;
}

double ground_state_distribution(const ModeBasis& basis, std::span<const int> subset,
                                 std::span<const double> eta) {
    if (subset.size() != eta.size())
        throw std::invalid_argument("ground_state_distribution: size mismatch");
    double d = 1.0;
    for (size_t m = 0; m < subset.size(); ++m) {
        check_mode(basis, subset[m], "ground_state_distribution");
        const double w = basis.frequency(subset[m]);
        d *= std::sqrt(w / std::numbers::pi) * std::exp(-w * eta[m] * eta[m]);
    }
    return d;
}

double position_variance_quantum(const ModeBasis& basis, int j, double T) {
    check_mode(basis, j, "position_variance_quantum");
    check_temperature(T, "position_variance_quantum");
    const int n = basis.size();
    double s = 0.0;
    for (int l = 1; l <= n; ++l) {
        const double sin_jl = std::sin(std::numbers::pi * j * l / (n + 1));
        const double w = basis.frequency(l);
        s += sin_jl * sin_jl / ((n + 1) * w * std::tanh(0.5 * w / T));
    }
    return s;
}

double position_variance_classical(const ModeBasis& basis, int j, double T) {
    check_mode(basis, j, "position_variance_classical");
    check_temperature(T, "position_variance_classical");
    const int n = basis.size();
    double s = 0.0;
    for (int l = 1; l <= n; ++l) {
        const double sin_jl = std::sin(std::numbers::pi * j * l / (n + 1));
        const double w = basis.frequency(l);
        s += sin_jl * sin_jl * 2.0 * T / ((n + 1) * w * w);
    }
    return s;
}

double position_distribution(const ModeBasis& basis, std::span<const int> subset,
                             std::span<const double> q, double T, bool quantum) {
    if (subset.size() != q.size())
        throw std::invalid_argument("position_distribution: size mismatch");
    double d = 1.0;
    for (size_t m = 0; m < subset.size(); ++m) {
        const double s2 = quantum ? position_variance_quantum(basis, subset[m], T)
                                  : position_variance_classical(basis, subset[m], T);
        d *= std::exp(-0.5 * q[m] * q[m] / s2) / std::sqrt(2.0 * std::numbers::pi * s2);
    }
    return d;
}

double kubo_exact_mode(const ModeBasis& basis, int j, int k, double T, double t) {
    check_mode(basis, j, "kubo_exact_mode");
    check_mode(basis, k, "kubo_exact_mode");
    check_temperature(T, "kubo_exact_mode");
    if (j != k) return 0.0;
    const double w = basis.frequency(j);
    return T * std::cos(w * t) / (w * w);
}

double kubo_exact_position(const ModeBasis& basis, int j, int k, double T, double t) {
    check_mode(basis, j, "kubo_exact_position");
    check_mode(basis, k, "kubo_exact_position");
    check_temperature(T, "kubo_exact_position");
    const int n = basis.size();
    double s = 0.0;
    for (int l = 1; l <= n; ++l) {
        const double w = basis.frequency(l);
        s += std::sin(std::numbers::pi * j * l / (n + 1)) *
             std::sin(std::numbers::pi * k * l / (n + 1)) * T * std::cos(w * t) / (w * w);
    }
    return 2.0 / (n + 1) * s;
}

double rpmd_harmonic_mode(const ModeBasis& basis, int j, double T, double t) {
    return kubo_exact_mode(basis, j, j, T, t);
}

double rpmd_harmonic_position(const ModeBasis& basis, int j, double T, double t) {
    return kubo_exact_position(basis, j, j, T, t);
}

double rp_normal_frequency(const ModeBasis& basis, int j, int k, double T, int p_beads) {
    check_mode(basis, j, "rp_normal_frequency");
    check_temperature(T, "rp_normal_frequency");
    if (k < 1 || k > p_beads)
        throw std::out_of_range("rp_normal_frequency: bead index out of range");
    const double w = basis.frequency(j);
    const double pt = double(p_beads) * T;
    const double s = std::sin(std::numbers::pi * (k - 1) / double(p_beads));
    return pt * std::sqrt(4.0 * s * s + w * w / (pt * pt));
}

namespace {

// e^z K_nu(z) asymptotic series, valid for large z
double scaled_bessel_k_asymptotic(double nu, double z) {
    const double mu = 4.0 * nu * nu;
    const double c1 = (mu - 1.0) / 8.0;
    const double c2 = (mu - 1.0) * (mu - 9.0) / 128.0;
    const double c3 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / 3072.0;
    return std::sqrt(std::numbers::pi / (2.0 * z)) *
           (1.0 + c1 / z + c2 / (z * z) + c3 / (z * z * z));
}

constexpr double kAsymptoticSwitch = 200.0;  // ratio error < 1e-10 beyond this

}  // namespace

double quartic_site_partition(double T, double alpha) {
    check_temperature(T, "quartic_site_partition");
    if (alpha <= 0.0)
        throw std::invalid_argument("quartic_site_partition: alpha must be positive");
    const double z = 1.0 / (4.0 * alpha * T);
    if (z > kAsymptoticSwitch)
        return scaled_bessel_k_asymptotic(0.25, z) / std::sqrt(2.0 * alpha);
    return std::exp(z) * std::cyl_bessel_k(0.25, z) / std::sqrt(2.0 * alpha);
}

double quartic_site_moment(double T, double alpha) {
    check_temperature(T, "quartic_site_moment");
    if (alpha <= 0.0)
        throw std::invalid_argument("quartic_site_moment: alpha must be positive");
    const double z = 1.0 / (4.0 * alpha * T);
    double ratio;  // K_{3/4}(z) / K_{1/4}(z)
    if (z > kAsymptoticSwitch)
        ratio = scaled_bessel_k_asymptotic(0.75, z) / scaled_bessel_k_asymptotic(0.25, z);
    else
        ratio = std::cyl_bessel_k(0.75, z) / std::cyl_bessel_k(0.25, z);
    return (ratio - 1.0) / (2.0 * alpha);
}

}  // namespace fpu
