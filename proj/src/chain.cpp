#include "fpu/chain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpu {

ChainSpec ChainSpec::make(int n_particles, double alpha, double beta,
                          bool allow_unequal) {
    if (n_particles < 1) throw std::invalid_argument("ChainSpec: n_particles must be >= 1");
    if (alpha < 0.0 || beta < 0.0)
        throw std::invalid_argument("ChainSpec: anharmonic coefficients must be >= 0");
    if (alpha > 0.0 && beta == 0.0)
        throw std::invalid_argument(
            "ChainSpec: beta must be > 0 when alpha > 0 (unconfined chain)");
    if (!allow_unequal && alpha != beta)
        throw std::invalid_argument(
            "ChainSpec: alpha != beta requires the allow_unequal flag");
    return {n_particles, alpha, beta};
}

double pair_potential(double r, const ChainSpec& spec) {
    return r * r * (0.5 + r * (spec.alpha / 3.0 + r * spec.beta / 4.0));
}

double pair_force(double r, const ChainSpec& spec) {
    return r * (1.0 + r * (spec.alpha + r * spec.beta));
}

double pair_stiffness(double r, const ChainSpec& spec) {
    return 1.0 + r * (2.0 * spec.alpha + 3.0 * spec.beta * r);
}

double minimum_displacement(const ChainSpec& spec) {
    const double a = spec.alpha;
    if (a < 4.0)
        throw std::domain_error(
            "minimum_displacement: no secondary stationary point for alpha < 4");
    return (-a - std::sqrt(a * a - 4.0 * a)) / (2.0 * a);
}

double chain_potential(std::span<const double> q, const ChainSpec& spec) {
    const int n = spec.n_particles;
    if (int(q.size()) != n) throw std::invalid_argument("chain_potential: bad length");
    double e = pair_potential(q[0], spec);  // bond 0: q_1 - q_0
    for (int j = 1; j < n; ++j) e += pair_potential(q[j] - q[j - 1], spec);
    e += pair_potential(-q[n - 1], spec);  // bond N: q_{N+1} - q_N
    return e;
}

void chain_forces(std::span<const double> q, const ChainSpec& spec,
                  std::span<double> forces) {
    const int n = spec.n_particles;
    if (int(q.size()) != n || int(forces.size()) != n)
        throw std::invalid_argument("chain_forces: bad length");
    double left = pair_force(q[0], spec);  // tension of the bond behind particle j
    for (int j = 0; j < n; ++j) {
        const double right =
            (j + 1 < n) ? pair_force(q[j + 1] - q[j], spec) : pair_force(-q[j], spec);
        forces[j] = -left + right;
        left = right;
    }
}

double site_force(std::span<const double> q, int j, const ChainSpec& spec) {
    const int n = int(q.size());
    if (j < 1 || j > n) throw std::out_of_range("site_force: index out of range");
    const double left = (j >= 2) ? q[j - 1] - q[j - 2] : q[0];
    const double right = (j <= n - 1) ? q[j] - q[j - 1] : -q[n - 1];
    return -pair_force(left, spec) + pair_force(right, spec);
}

BondStiffness site_stiffness(std::span<const double> q, int j, const ChainSpec& spec) {
    const int n = int(q.size());
    if (j < 1 || j > n) throw std::out_of_range("site_stiffness: index out of range");
    const double left = (j >= 2) ? q[j - 1] - q[j - 2] : q[0];
    const double right = (j <= n - 1) ? q[j] - q[j - 1] : -q[n - 1];
    return {pair_stiffness(left, spec), pair_stiffness(right, spec)};
}

ModeBasis::ModeBasis(int n_particles) : n_(n_particles) {
    if (n_ < 1) throw std::invalid_argument("ModeBasis: n_particles must be >= 1");
    freq_.resize(n_);
    kernel_.resize(size_t(n_) * n_);
    const double norm = std::sqrt(2.0 / (n_ + 1));
    for (int j = 1; j <= n_; ++j) {
        freq_[j - 1] = 2.0 * std::sin(std::numbers::pi * j / (2.0 * (n_ + 1)));
        for (int l = 1; l <= n_; ++l)
            kernel_[(j - 1) * size_t(n_) + (l - 1)] =
                norm * std::sin(std::numbers::pi * j * l / (n_ + 1));
    }
}

void ModeBasis::apply(std::span<const double> in, std::span<double> out) const {
    if (int(in.size()) != n_ || int(out.size()) != n_)
        throw std::invalid_argument("ModeBasis: length mismatch");
    for (int j = 0; j < n_; ++j) {
        double s = 0.0;
        const double* row = kernel_.data() + size_t(j) * n_;
        for (int l = 0; l < n_; ++l) s += row[l] * in[l];
        out[j] = s;
    }
}

void ModeBasis::to_modes(std::span<const double> x, std::span<double> eta) const {
    apply(x, eta);
}

void ModeBasis::from_modes(std::span<const double> eta, std::span<double> x) const {
    apply(eta, x);
}

std::vector<double> ModeBasis::to_modes(std::span<const double> x) const {
    std::vector<double> eta(n_);
    apply(x, eta);
    return eta;
}

std::vector<double> ModeBasis::from_modes(std::span<const double> eta) const {
    std::vector<double> x(n_);
    apply(eta, x);
    return x;
}

}  // namespace fpu
