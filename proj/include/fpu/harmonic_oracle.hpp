#pragma once

#include <span>
#include <vector>

#include "fpu/chain.hpp"

namespace fpu {

// Closed forms for the harmonic (alpha = beta = 0) chain and the quartic
// single-site limit.  Everything here is analytic; the simulation modules
// are validated against these expressions.

// sigma_c^2 = T / omega_j^2
double mode_variance_classical(const ModeBasis& basis, int j, double T);
// sigma_q^2 = 1 / (2 omega_j tanh(omega_j / 2T))
double mode_variance_quantum(const ModeBasis& basis, int j, double T);

// Thermal density of a subset of normal modes: a product of Gaussians
//   prod_j sqrt(omega_j/pi) tanh^(1/2)(omega_j/2T) exp(-omega_j tanh(omega_j/2T) eta_j^2)
double mode_distribution(const ModeBasis& basis, std::span<const int> subset,
                         std::span<const double> eta, double T);

// T -> 0 limit: prod_j (omega_j/pi)^(1/2) exp(-omega_j eta_j^2)
double ground_state_distribution(const ModeBasis& basis, std::span<const int> subset,
                                 std::span<const double> eta);

// sigma_{q_j}^2 = sum_l sin^2(pi j l/(N+1)) / ((N+1) omega_l tanh(omega_l/2T))
double position_variance_quantum(const ModeBasis& basis, int j, double T);
// classical limit of the same sum: sum_l sin^2 * 2T / ((N+1) omega_l^2)
double position_variance_classical(const ModeBasis& basis, int j, double T);
// Gaussian single-particle densities with those variances
double position_distribution(const ModeBasis& basis, std::span<const int> subset,
                             std::span<const double> q, double T, bool quantum = true);

// Kubo-transformed mode autocorrelation, exact: delta_jk T cos(omega_j t) / omega_j^2
double kubo_exact_mode(const ModeBasis& basis, int j, int k, double T, double t);
// position correlator: (2/(N+1)) sum_l sin(pi j l/(N+1)) sin(pi k l/(N+1)) T cos(omega_l t)/omega_l^2
double kubo_exact_position(const ModeBasis& basis, int j, int k, double T, double t);

// Ring-polymer dynamics reproduces the exact harmonic correlators; these are
// the same expressions under their own names so the identity is explicit.
double rpmd_harmonic_mode(const ModeBasis& basis, int j, double T, double t);
double rpmd_harmonic_position(const ModeBasis& basis, int j, double T, double t);

// Bead-resolved normal-mode frequency of the free ring polymer plus chain:
//   Omega_{j,k} = P T sqrt(4 sin^2(pi (k-1)/P) + omega_j^2 / (P T)^2)
double rp_normal_frequency(const ModeBasis& basis, int j, int k, double T, int p_beads);

// Single-site quartic limit V4(q) = q^2 + (alpha/2) q^4.
// Partition function: Z = exp(z) K_{1/4}(z) / sqrt(2 alpha), z = 1/(4 alpha T).
double quartic_site_partition(double T, double alpha);
// Second moment f(T).  The Bessel-I combination reduces exactly, via
// I_{5/4} = I_{-3/4} - I_{1/4}/(2z) and I_{-nu} - I_{nu} = (2/pi) sin(nu pi) K_nu,
// to the cancellation-free ratio form
//   f(T) = ( K_{3/4}(z) / K_{1/4}(z) - 1 ) / (2 alpha).
// An asymptotic branch covers z where the scaled Bessel values underflow.
double quartic_site_moment(double T, double alpha);

}  // namespace fpu
