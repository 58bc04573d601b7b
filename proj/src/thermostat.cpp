#include "fpu/thermostat.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fpu/fast_exp.hpp"

namespace fpu {

std::array<double, 7> suzuki_yoshida_weights(int order) {
    if (order != 6)
        throw std::invalid_argument("suzuki_yoshida_weights: only order 6 is supported");
    // Yoshida's sixth-order solution A, palindromic 7-stage layout
    constexpr double w1 = 0.784513610477560;
    constexpr double w2 = 0.235573213359357;
    constexpr double w3 = -1.17767998417887;
    const double w0 = 1.0 - 2.0 * (w1 + w2 + w3);
    const std::array<double, 7> w{w1, w2, w3, w0, w3, w2, w1};
    double s1 = 0.0, s3 = 0.0, s5 = 0.0;
    for (double v : w) {
        s1 += v;
        s3 += v * v * v;
        s5 += v * v * v * v * v;
    }
    if (std::abs(s1 - 1.0) > 1e-12 || std::abs(s3) > 1e-12 || std::abs(s5) > 1e-12)
        throw std::runtime_error("suzuki_yoshida_weights: order conditions violated");
    return w;
}

void NhcParams::validate() const {
    if (m_chain < 2)
        throw std::invalid_argument("NhcParams: m_chain must be >= 2 (updates reference "
                                    "both chain neighbors)");
    if (n_sy != 7) throw std::invalid_argument("NhcParams: n_sy must be 7 (order 6)");
    if (n_respa < 1) throw std::invalid_argument("NhcParams: n_respa must be >= 1");
    if (tau_tilde < 0.0) throw std::invalid_argument("NhcParams: tau_tilde must be >= 0");
}

double nhc_mass(double T, int p_beads, double tau_tilde, int k) {
    if (T <= 0.0) throw std::invalid_argument("nhc_mass: temperature must be positive");
    if (k < 1 || k > p_beads) throw std::invalid_argument("nhc_mass: bead index out of range");
    if (k == 1) return tau_tilde * tau_tilde * T;
    return 1.0 / (double(p_beads) * T);
}

NhcBank::NhcBank(int n_particles, int p_beads, double T, const NhcParams& params) {
    params.validate();
    if (params.tau_tilde <= 0.0)
        throw std::invalid_argument("NhcBank: tau_tilde must be resolved before construction");
    ndof_ = n_particles * p_beads;
    m_ = params.m_chain;
    n_sy_ = params.n_sy;
    n_respa_ = params.n_respa;
    w_ = suzuki_yoshida_weights(6);
    eta_.assign(size_t(m_) * ndof_, 0.0);
    peta_.assign(size_t(m_) * ndof_, 0.0);
    q_inv_.resize(ndof_);
    inv_mu_.resize(ndof_);
    arg_.resize(ndof_);
    fac_.resize(ndof_);
    const StagingMasses masses(p_beads);
    for (int k = 1; k <= p_beads; ++k) {
        const double qinv = 1.0 / nhc_mass(T, p_beads, params.tau_tilde, k);
        const double minv = 1.0 / masses.mu_prime[k - 1];
        for (int j = 0; j < n_particles; ++j) {
            const int i = (k - 1) * n_particles + j;
            q_inv_[i] = qinv;
            inv_mu_[i] = minv;
        }
    }
}

double NhcBank::energy(double T) const {
    double e = 0.0;
    for (int g = 0; g < m_; ++g) {
        const double* pe = peta_.data() + size_t(g) * ndof_;
        const double* et = eta_.data() + size_t(g) * ndof_;
        for (int i = 0; i < ndof_; ++i)
            e += 0.5 * pe[i] * pe[i] * q_inv_[i] + T * et[i];
    }
    return e;
}

// One factor S(h) with h = delta/2: G^M quarter-kick, scaled kicks down the
// chain, momentum scaling plus eta drifts, then the mirror sweep.  The scale
// factor that sandwiches each kick uses p_eta^{gamma+1}, which the kick does
// not touch, so one exponential serves both sides.
void NhcBank::apply_s(std::span<double> p, double T, double h, int i0, int i1) {
    const int nd = i1 - i0;
    const double half = 0.5 * h;     // quarter-kick coefficient delta/4
    const double quarter = 0.25 * h; // scale exponent coefficient delta/8
    double* arg = arg_.data() + i0;
    double* fac = fac_.data() + i0;
    const double* qi = q_inv_.data() + i0;
    const double* mi = inv_mu_.data() + i0;
    double* pp = p.data() + i0;

    auto pe = [&](int g) { return peta_.data() + size_t(g) * ndof_ + i0; };
    auto et = [&](int g) { return eta_.data() + size_t(g) * ndof_ + i0; };

    // topmost chain momentum
    {
        double* pm = pe(m_ - 1);
        const double* pm1 = pe(m_ - 2);
        for (int i = 0; i < nd; ++i)
            pm[i] += half * (pm1[i] * pm1[i] * qi[i] - T);
    }
    // down sweep gamma = M-1..1 (0-based g = M-2..0)
    for (int g = m_ - 2; g >= 0; --g) {
        double* pg = pe(g);
        const double* pup = pe(g + 1);
        for (int i = 0; i < nd; ++i) arg[i] = -quarter * pup[i] * qi[i];
        vec_exp(arg, fac, nd);
        if (g == 0) {
            for (int i = 0; i < nd; ++i)
                pg[i] = fac[i] * (fac[i] * pg[i] + half * (pp[i] * pp[i] * mi[i] - T));
        } else {
            const double* pdn = pe(g - 1);
            for (int i = 0; i < nd; ++i)
                pg[i] = fac[i] * (fac[i] * pg[i] + half * (pdn[i] * pdn[i] * qi[i] - T));
        }
    }
    // physical momentum scaling and thermostat position drifts
    {
        const double* p1 = pe(0);
        for (int i = 0; i < nd; ++i) arg[i] = -h * p1[i] * qi[i];
        vec_exp(arg, fac, nd);
        for (int i = 0; i < nd; ++i) pp[i] *= fac[i];
        for (int g = 0; g < m_; ++g) {
            double* eg = et(g);
            const double* pg = pe(g);
            for (int i = 0; i < nd; ++i) eg[i] += h * pg[i] * qi[i];
        }
    }
    // up sweep gamma = 1..M-1 with refreshed forces
    for (int g = 0; g <= m_ - 2; ++g) {
        double* pg = pe(g);
        const double* pup = pe(g + 1);
        for (int i = 0; i < nd; ++i) arg[i] = -quarter * pup[i] * qi[i];
        vec_exp(arg, fac, nd);
        if (g == 0) {
            for (int i = 0; i < nd; ++i)
                pg[i] = fac[i] * (fac[i] * pg[i] + half * (pp[i] * pp[i] * mi[i] - T));
        } else {
            const double* pdn = pe(g - 1);
            for (int i = 0; i < nd; ++i)
                pg[i] = fac[i] * (fac[i] * pg[i] + half * (pdn[i] * pdn[i] * qi[i] - T));
        }
    }
    {
        double* pm = pe(m_ - 1);
        const double* pm1 = pe(m_ - 2);
        for (int i = 0; i < nd; ++i)
            pm[i] += half * (pm1[i] * pm1[i] * qi[i] - T);
    }
}

void NhcBank::half_step_range(std::span<double> p, double T, double dt, int i0, int i1) {
    for (int a = 0; a < n_sy_; ++a) {
        const double h = 0.5 * w_[a] * dt / double(n_respa_);  // = delta_alpha / 2
        for (int r = 0; r < n_respa_; ++r) apply_s(p, T, h, i0, i1);
    }
}

void NhcBank::half_step(std::span<double> p, double T, double dt) {
    if (int(p.size()) != ndof_) throw std::invalid_argument("NhcBank::half_step: bad size");
    // The chains of distinct (j,k) never touch each other, so disjoint dof
    // blocks evolve independently; results are partition-invariant.  Small
    // banks skip the parallel region, whose setup cost would dominate.
#ifdef _OPENMP
    if (ndof_ >= 4096) {
#pragma omp parallel
        {
            const int nt = omp_get_num_threads();
            const int t = omp_get_thread_num();
            const int lo = int(std::int64_t(ndof_) * t / nt);
            const int hi = int(std::int64_t(ndof_) * (t + 1) / nt);
            if (hi > lo) half_step_range(p, T, dt, lo, hi);
        }
        return;
    }
#endif
    half_step_range(p, T, dt, 0, ndof_);
}

double conserved_energy(const RingPolymerState& state, const NhcBank& bank, double T,
                        const ChainSpec& spec) {
    if (state.rep != Representation::staged)
        throw std::invalid_argument("conserved_energy: staged representation required");
    return pimd_hamiltonian(state, T, spec) + bank.energy(T);
}

}  // namespace fpu
