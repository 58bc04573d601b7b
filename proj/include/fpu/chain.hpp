#pragma once

#include <span>
#include <vector>

namespace fpu {

// Nearest-neighbor anharmonic chain with fixed ends:
//   V(r) = r^2/2 + alpha r^3/3 + beta r^4/4,  q_0 = q_{N+1} = 0.
// All quantities are dimensionless.
struct ChainSpec {
    int n_particles = 1;
    double alpha = 0.0;
    double beta = 0.0;

    // Validates and builds a spec.  By default alpha == beta is required
    // (the two coefficients descend from a single physical expansion);
    // pass allow_unequal to lift that for experimentation.  beta > 0 is
    // required whenever alpha > 0 so the chain stays globally confined.
    static ChainSpec make(int n_particles, double alpha, double beta,
                          bool allow_unequal = false);
    static ChainSpec harmonic(int n_particles) { return make(n_particles, 0.0, 0.0); }
};

double pair_potential(double r, const ChainSpec& spec);  // V(r)
double pair_force(double r, const ChainSpec& spec);      // V'(r) = r + a r^2 + b r^3
double pair_stiffness(double r, const ChainSpec& spec);  // V''(r) = 1 + 2a r + 3b r^2

// Location of the secondary stationary point of V, present for alpha >= 4:
//   r_min = (-alpha - sqrt(alpha^2 - 4 alpha)) / (2 alpha)
// Throws std::domain_error below that threshold.
double minimum_displacement(const ChainSpec& spec);

// Total potential over the N+1 bonds, virtual boundary zeros included.
double chain_potential(std::span<const double> q, const ChainSpec& spec);

// forces[j] = -dV/dq_j = -V'(q_j - q_{j-1}) + V'(q_{j+1} - q_j)
void chain_forces(std::span<const double> q, const ChainSpec& spec,
                  std::span<double> forces);

// force on a single particle, same boundary handling
double site_force(std::span<const double> q, int j, const ChainSpec& spec);
// V'' of the two bonds adjacent to particle j: {left, right}
struct BondStiffness {
    double left;
    double right;
};
BondStiffness site_stiffness(std::span<const double> q, int j, const ChainSpec& spec);

// Sine normal modes of the harmonic chain with Dirichlet ends.  The kernel
// sqrt(2/(N+1)) sin(pi j l/(N+1)) is symmetric and orthogonal, so the
// transform is its own inverse.
class ModeBasis {
  public:
    explicit ModeBasis(int n_particles);

    int size() const { return n_; }
    // omega_j = 2 sin(pi j / (2(N+1))), j = 1..N
    double frequency(int j) const { return freq_[j - 1]; }
    const std::vector<double>& frequencies() const { return freq_; }
    double kernel(int j, int l) const { return kernel_[(j - 1) * n_ + (l - 1)]; }

    void to_modes(std::span<const double> x, std::span<double> eta) const;
    void from_modes(std::span<const double> eta, std::span<double> x) const;
    std::vector<double> to_modes(std::span<const double> x) const;
    std::vector<double> from_modes(std::span<const double> eta) const;

  private:
    int n_;
    std::vector<double> freq_;
    std::vector<double> kernel_;
    void apply(std::span<const double> in, std::span<double> out) const;
};

}  // namespace fpu
