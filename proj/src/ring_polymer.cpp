#include "fpu/ring_polymer.hpp"

#include <stdexcept>
#include <string>

namespace fpu {

namespace {
void check_shape(const BeadMatrix& m, const char* who) {
    if (m.n < 1 || m.p < 1) throw std::invalid_argument(std::string(who) + ": empty matrix");
}
}  // namespace

StagingMasses::StagingMasses(int p) {
    if (p < 1) throw std::invalid_argument("StagingMasses: p must be >= 1");
    mu.resize(p);
    mu_prime.resize(p);
    mu[0] = 0.0;
    mu_prime[0] = 1.0;
    for (int k = 2; k <= p; ++k) {
        mu[k - 1] = double(k) / double(k - 1);
        mu_prime[k - 1] = mu[k - 1];
    }
}

void stage(const BeadMatrix& q, BeadMatrix& u) {
    check_shape(q, "stage");
    const int n = q.n, p = q.p;
    if (u.n != n || u.p != p) u = BeadMatrix(n, p);
    for (int j = 1; j <= n; ++j) u(j, 1) = q(j, 1);
    for (int k = 2; k <= p; ++k) {
        const int knext = (k == p) ? 1 : k + 1;
        for (int j = 1; j <= n; ++j)
            u(j, k) = q(j, k) - ((k - 1) * q(j, knext) + q(j, 1)) / double(k);
    }
}

BeadMatrix stage(const BeadMatrix& q) {
    BeadMatrix u;
    stage(q, u);
    return u;
}

void unstage(const BeadMatrix& u, BeadMatrix& q) {
    check_shape(u, "unstage");
    const int n = u.n, p = u.p;
    if (q.n != n || q.p != p) q = BeadMatrix(n, p);
    for (int j = 1; j <= n; ++j) q(j, 1) = u(j, 1);
    // backward recursion q^k = u^k + ((k-1)/k) q^{k+1} + u^1/k, q^{P+1} = q^1
    for (int k = p; k >= 2; --k) {
        const int knext = (k == p) ? 1 : k + 1;
        for (int j = 1; j <= n; ++j)
            q(j, k) = u(j, k) + ((k - 1) * q(j, knext) + u(j, 1)) / double(k);
    }
}

BeadMatrix unstage(const BeadMatrix& u) {
    BeadMatrix q;
    unstage(u, q);
    return q;
}

double spring_sum_primitive(const BeadMatrix& q) {
    check_shape(q, "spring_sum_primitive");
    double s = 0.0;
    for (int k = 1; k <= q.p; ++k) {
        const int knext = (k == q.p) ? 1 : k + 1;
        for (int j = 1; j <= q.n; ++j) {
            const double d = q(j, knext) - q(j, k);
            s += d * d;
        }
    }
    return s;
}

double spring_sum_staged(const BeadMatrix& u) {
    check_shape(u, "spring_sum_staged");
    double s = 0.0;
    for (int k = 2; k <= u.p; ++k) {
        const double mu_k = double(k) / double(k - 1);
        for (int j = 1; j <= u.n; ++j) s += mu_k * u(j, k) * u(j, k);
    }
    return s;
}

double harmonic_spring_energy(const BeadMatrix& pos, Representation rep, double T) {
    const double sum = (rep == Representation::primitive) ? spring_sum_primitive(pos)
                                                          : spring_sum_staged(pos);
    return 0.5 * pos.p * T * T * sum;
}

void staging_forces(const BeadMatrix& q, const ChainSpec& spec, BeadMatrix& f_u,
                    BeadMatrix& scratch) {
    check_shape(q, "staging_forces");
    const int n = q.n, p = q.p;
    if (spec.n_particles != n) throw std::invalid_argument("staging_forces: N mismatch");
    if (f_u.n != n || f_u.p != p) f_u = BeadMatrix(n, p);
    if (scratch.n != n || scratch.p != p) scratch = BeadMatrix(n, p);

    BeadMatrix& f = scratch;  // primitive forces per bead
    for (int k = 1; k <= p; ++k) chain_forces(q.bead(k), spec, f.bead(k));

    const double inv_p = 1.0 / double(p);
    for (int j = 1; j <= n; ++j) {
        double s = 0.0;
        for (int k = 1; k <= p; ++k) s += f(j, k);
        f_u(j, 1) = s * inv_p;
    }
    for (int k = 2; k <= p; ++k) {
        const double c = double(k - 2) / double(k - 1);
        for (int j = 1; j <= n; ++j) f_u(j, k) = c * f_u(j, k - 1) + f(j, k) * inv_p;
    }
}

void staging_forces(const BeadMatrix& q, const ChainSpec& spec, BeadMatrix& f_u) {
    BeadMatrix scratch;
    staging_forces(q, spec, f_u, scratch);
}

double pimd_hamiltonian(const RingPolymerState& state, double T, const ChainSpec& spec) {
    check_shape(state.pos, "pimd_hamiltonian");
    const int p = state.pos.p;
    const double inv_p = 1.0 / double(p);
    double kinetic = 0.0;
    if (state.rep == Representation::staged) {
        const StagingMasses m(p);
        for (int k = 1; k <= p; ++k) {
            const double w = 0.5 / m.mu_prime[k - 1];
            for (int j = 1; j <= state.pos.n; ++j)
                kinetic += w * state.mom(j, k) * state.mom(j, k);
        }
    } else {
        for (double v : state.mom.a) kinetic += 0.5 * v * v;
    }
    const double spring = harmonic_spring_energy(state.pos, state.rep, T);
    double pot = 0.0;
    if (state.rep == Representation::staged) {
        const BeadMatrix q = unstage(state.pos);
        for (int k = 1; k <= p; ++k) pot += chain_potential(q.bead(k), spec);
    } else {
        for (int k = 1; k <= p; ++k) pot += chain_potential(state.pos.bead(k), spec);
    }
    return kinetic + spring + pot * inv_p;
}

double rpmd_hamiltonian(const RingPolymerState& state, double T, const ChainSpec& spec) {
    if (state.rep != Representation::primitive)
        throw std::invalid_argument("rpmd_hamiltonian: primitive representation required");
    check_shape(state.pos, "rpmd_hamiltonian");
    const int p = state.pos.p;
    double kinetic = 0.0;
    for (double v : state.mom.a) kinetic += 0.5 * v * v;
    const double spring = 0.5 * double(p) * double(p) * T * T * spring_sum_primitive(state.pos);
    double pot = 0.0;
    for (int k = 1; k <= p; ++k) pot += chain_potential(state.pos.bead(k), spec);
    return kinetic + spring + pot;
}

}  // namespace fpu
