#pragma once

#include <span>
#include <vector>

#include "fpu/chain.hpp"

namespace fpu {

// N x P bead array.  Storage is k-major so the flat index is i = N(k-1)+j,
// i.e. bead 1 holds particles 1..N, then bead 2, and so on.  Accessors are
// 1-based to match the j/k labeling used throughout.
struct BeadMatrix {
    int n = 0;  // particles per bead
    int p = 0;  // beads
    std::vector<double> a;

    BeadMatrix() = default;
    BeadMatrix(int n_, int p_) : n(n_), p(p_), a(size_t(n_) * p_, 0.0) {}

    double& operator()(int j, int k) { return a[size_t(k - 1) * n + (j - 1)]; }
    double operator()(int j, int k) const { return a[size_t(k - 1) * n + (j - 1)]; }

    std::span<double> bead(int k) { return {a.data() + size_t(k - 1) * n, size_t(n)}; }
    std::span<const double> bead(int k) const {
        return {a.data() + size_t(k - 1) * n, size_t(n)};
    }
    size_t size() const { return a.size(); }
};

enum class Representation { primitive, staged };

// Fictitious staging masses: mu_1 = 0, mu_k = k/(k-1); mu'_1 = 1, else mu_k.
// Their product telescopes to P, which is what lets the momentum Gaussian
// absorb the P^(NP/2) measure factor.
struct StagingMasses {
    std::vector<double> mu;        // index k-1
    std::vector<double> mu_prime;  // index k-1
    explicit StagingMasses(int p);
};

// u^1 = q^1,  u^k = q^k - ((k-1) q^{k+1} + q^1)/k   (cyclic q^{P+1} = q^1)
void stage(const BeadMatrix& q, BeadMatrix& u);
BeadMatrix stage(const BeadMatrix& q);

// closed inverse: q^k = u^1 + sum_{l=k}^P ((k-1)/(l-1)) u^l, unit Jacobian
void unstage(const BeadMatrix& u, BeadMatrix& q);
BeadMatrix unstage(const BeadMatrix& u);

// sum_k |q^{k+1} - q^k|^2 over the cyclic ring
double spring_sum_primitive(const BeadMatrix& q);
// the decoupled form: sum_{k>=2} mu_k |u^k|^2
double spring_sum_staged(const BeadMatrix& u);

// Inter-bead harmonic energy (P T^2 / 2) * spring sum, evaluated in whichever
// representation the positions are given; the two agree identically.
double harmonic_spring_energy(const BeadMatrix& pos, Representation rep, double T);

// Staging-space potential force f_u = -(1/P) dV(q(u))/du, from the recursion
//   f_u(j,1) = (1/P) sum_l F_j^l,
//   f_u(j,k) = ((k-2)/(k-1)) f_u(j,k-1) + F_j^k / P,
// where F_j^k is the primitive force on particle j in bead k.
void staging_forces(const BeadMatrix& q_primitive, const ChainSpec& spec,
                    BeadMatrix& f_u);
void staging_forces(const BeadMatrix& q_primitive, const ChainSpec& spec,
                    BeadMatrix& f_u, BeadMatrix& scratch);

struct RingPolymerState {
    BeadMatrix pos;
    BeadMatrix mom;
    Representation rep = Representation::primitive;

    RingPolymerState() = default;
    RingPolymerState(int n, int p, Representation r)
        : pos(n, p), mom(n, p), rep(r) {}
};

// Sampling convention (Boltzmann weight e^{-H/T}):
//   sum_k [ p^2/(2 mu'_k) + mu_k P T^2 u^2 / 2 + V(q^k)/P ]
// or, in primitive coordinates with unit masses, spring constant P T^2 / 2
// and potential V/P.  Momenta are interpreted in the state's representation.
double pimd_hamiltonian(const RingPolymerState& state, double T, const ChainSpec& spec);

// Dynamics convention (weight e^{-H/(TP)}): primitive coordinates only,
//   sum_k [ p^2/2 + P^2 T^2 (q^{k+1} - q^k)^2 / 2 + V(q^k) ].
// Configurationally this is P times the sampling Hamiltonian, so the two
// weights coincide.
double rpmd_hamiltonian(const RingPolymerState& state, double T, const ChainSpec& spec);

}  // namespace fpu
