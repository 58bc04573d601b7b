#pragma once

#include <array>
#include <span>
#include <vector>

#include "fpu/ring_polymer.hpp"

namespace fpu {

// Seven-stage palindromic Suzuki-Yoshida weights for a sixth-order symmetric
// composition.  The returned set is verified against the order conditions
//   sum w = 1,  sum w^3 = 0,  sum w^5 = 0   (each to 1e-12)
// and the call throws if verification fails, so stale constants cannot
// silently corrupt the integrator.  Only order 6 is supported.
std::array<double, 7> suzuki_yoshida_weights(int order = 6);

struct NhcParams {
    int m_chain = 5;          // thermostats per degree of freedom, must be >= 2
    double tau_tilde = 0.0;   // coupling timescale for k=1; 0 selects the default
    int n_sy = 7;             // Suzuki-Yoshida stages (order 6)
    int n_respa = 5;          // RESPA subdivisions of each stage

    void validate() const;
};

// Thermostat mass for bead index k:  Q = tau_tilde^2 T for k = 1, and
// Q = 1/(P T) for k = 2..P.  All chain positions gamma share the bead's Q.
double nhc_mass(double T, int p_beads, double tau_tilde, int k);

// Massive Nose-Hoover chains: one chain of length M per (j,k) degree of
// freedom, M*N*P pairs (eta, p_eta) in total.  Storage is gamma-major over a
// flat dof index so the integrator sweeps contiguous arrays.
class NhcBank {
  public:
    NhcBank(int n_particles, int p_beads, double T, const NhcParams& params);

    int n_dof() const { return ndof_; }
    int chain_length() const { return m_; }

    std::span<double> eta(int gamma) {  // gamma = 1..M
        return {eta_.data() + size_t(gamma - 1) * ndof_, size_t(ndof_)};
    }
    std::span<double> peta(int gamma) {
        return {peta_.data() + size_t(gamma - 1) * ndof_, size_t(ndof_)};
    }
    std::span<const double> eta(int gamma) const {
        return {eta_.data() + size_t(gamma - 1) * ndof_, size_t(ndof_)};
    }
    std::span<const double> peta(int gamma) const {
        return {peta_.data() + size_t(gamma - 1) * ndof_, size_t(ndof_)};
    }
    double mass(int i) const { return 1.0 / q_inv_[i]; }  // i = 0..ndof-1, k-major

    // sum over all chains of [ p_eta^2 / (2Q) + T eta ]
    double energy(double T) const;

    // Applies exp(i L_NHC dt/2) to the physical momenta and the bank itself:
    // the full Suzuki-Yoshida x RESPA composition of the factorized
    // single-chain propagator.  Momenta are staging-space, masses mu'_k.
    void half_step(std::span<double> p_momenta, double T, double dt);

  private:
    int ndof_, m_;
    int n_sy_, n_respa_;
    std::array<double, 7> w_;
    std::vector<double> eta_, peta_;   // [gamma][dof]
    std::vector<double> q_inv_;        // 1/Q per dof
    std::vector<double> inv_mu_;       // 1/mu'_k per dof
    std::vector<double> arg_, fac_;    // scratch for the exp sweeps

    void apply_s(std::span<double> p, double T, double h, int i0, int i1);
    void half_step_range(std::span<double> p, double T, double dt, int i0, int i1);

    friend class PimdSampler;
};

// Conserved energy of the thermostatted dynamics: the sampling Hamiltonian
// plus the thermostat term.  The state must be staged (the representation the
// sampler integrates).
double conserved_energy(const RingPolymerState& state, const NhcBank& bank, double T,
                        const ChainSpec& spec);

}  // namespace fpu
