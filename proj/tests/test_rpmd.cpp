#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fpu/harmonic_oracle.hpp"
#include "fpu/estimators.hpp"
#include "fpu/rng.hpp"
#include "fpu/rpmd.hpp"
#include "fpu/sampler.hpp"

using namespace fpu;

namespace {

SampleSet harmonic_samples(int n, int p, double T, long n_samples, unsigned seed) {
    SamplerConfig cfg;
    cfg.chain = ChainSpec::harmonic(n);
    cfg.temperature = T;
    cfg.n_beads = p;
    cfg.dt = 0.05;
    cfg.n_burn = 3000;
    cfg.stride = 30;
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    cfg.nhc.tau_tilde = 1.0;
    PimdSampler s(cfg);
    return s.run();
}

}  // namespace

TEST_CASE("observables") {
    const auto q4 = position_observable(8, 4);
    CHECK(q4.id == "q:4");
    CHECK(q4.coeff[3] == 1.0);
    const ModeBasis basis(8);
    const auto e1 = mode_observable(basis, 1);
    CHECK(e1.id == "eta:1");
    CHECK(e1.coeff[0] == doctest::Approx(basis.kernel(1, 1)));
    CHECK(parse_observable("q:3", 8).coeff[2] == 1.0);
    CHECK_THROWS_AS(parse_observable("q4*q4", 8), std::invalid_argument);
    CHECK_THROWS_AS(parse_observable("momentum:1", 8), std::invalid_argument);
    CHECK_THROWS_AS(parse_observable("q:9", 8), std::out_of_range);
}

TEST_CASE("rpmd trajectory physics") {
    SUBCASE("P = 1 harmonic oscillator solution per mode") {
        const int n = 3;
        const auto spec = ChainSpec::harmonic(n);
        const ModeBasis basis(n);
        const double T = 1.0;
        RingPolymerState st(n, 1, Representation::primitive);
        Rng rng(4);
        std::vector<double> eta0(n), etap0(n);
        for (int l = 0; l < n; ++l) {
            eta0[l] = rng.gauss();
            etap0[l] = rng.gauss();
        }
        basis.from_modes(eta0, st.pos.bead(1));
        basis.from_modes(etap0, st.mom.bead(1));
        BeadMatrix fbuf;
        rpmd_forces(st.pos, T, spec, fbuf);
        const double dt = 5e-4, t_final = 2.0;
        const long steps = std::lround(t_final / dt);
        for (long i = 0; i < steps; ++i) rpmd_step(st, T, spec, dt, fbuf);
        std::vector<double> eta_t(n);
        basis.to_modes(st.pos.bead(1), eta_t);
        for (int l = 0; l < n; ++l) {
            const double w = basis.frequency(l + 1);
            const double ref =
                eta0[l] * std::cos(w * t_final) + etap0[l] / w * std::sin(w * t_final);
            CHECK(std::abs(eta_t[l] - ref) < 1e-5);
        }
    }
    SUBCASE("bead normal modes oscillate at Omega_{j,k}") {
        const int n = 2, p = 4;
        const auto spec = ChainSpec::harmonic(n);
        const ModeBasis basis(n);
        const double T = 0.8;
        for (const auto& [j, k] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{1, 3}}) {
            const double omega = rp_normal_frequency(basis, j, k, T, p);
            RingPolymerState st(n, p, Representation::primitive);
            // eigenvector: physical sine mode times a ring cosine across beads
            for (int kk = 1; kk <= p; ++kk)
                for (int jj = 1; jj <= n; ++jj)
                    st.pos(jj, kk) = basis.kernel(j, jj) *
                                     std::cos(2.0 * std::numbers::pi * (k - 1) * (kk - 1) / p);
            const double amp0 = st.pos(1, 1);
            BeadMatrix fbuf;
            rpmd_forces(st.pos, T, spec, fbuf);
            const double t_half = std::numbers::pi / omega;  // half a period
            const long steps = std::lround(t_half / 2e-4);
            const double dt = t_half / steps;
            for (long i = 0; i < steps; ++i) rpmd_step(st, T, spec, dt, fbuf);
            CHECK(st.pos(1, 1) == doctest::Approx(-amp0).epsilon(1e-4));
        }
    }
    SUBCASE("rpmd energy is conserved without drift") {
        const auto spec = ChainSpec::make(4, 1.0, 1.0);
        const double T = 1.0;
        const int p = 8;
        RingPolymerState st(4, p, Representation::primitive);
        Rng rng(12);
        for (double& v : st.pos.a) v = rng.gauss(0.0, 0.2);
        for (double& v : st.mom.a) v = rng.gauss(0.0, std::sqrt(p * T));
        BeadMatrix fbuf;
        rpmd_forces(st.pos, T, spec, fbuf);
        const ModeBasis basis(4);
        const double dt = rpmd_default_dt(basis, T, p);
        const double e0 = rpmd_hamiltonian(st, T, spec);
        double err_first = 0.0, err_second = 0.0;
        for (int i = 0; i < 20000; ++i) {
            rpmd_step(st, T, spec, dt, fbuf);
            const double err = std::abs(rpmd_hamiltonian(st, T, spec) - e0);
            (i < 10000 ? err_first : err_second) = std::max(i < 10000 ? err_first : err_second, err);
        }
        // bounded oscillation at ~ (Omega dt)^2 with no secular growth
        CHECK(err_first / std::abs(e0) < 2e-3);
        CHECK(err_second < 1.5 * err_first);
    }
}

TEST_CASE("zeta coefficients") {
    const int n = 4, p = 8;
    const double T = 1.0;
    const auto samples = harmonic_samples(n, p, T, 1500, 42);
    const auto spec = ChainSpec::harmonic(n);
    const ModeBasis basis(n);
    const int j = 2;
    const auto z = zeta_coefficients(samples, spec, j);

    SUBCASE("zeta2 is the analytic constant") {
        CHECK(z.zeta2.value == T);
        CHECK(z.zeta2.se == 0.0);
    }
    SUBCASE("zeta0 matches the classical centroid variance") {
        // the centroid of a harmonic ring polymer carries the classical value
        double ref = 0.0;
        for (int l = 1; l <= n; ++l)
            ref += basis.kernel(l, j) * basis.kernel(l, j) * T /
                   (basis.frequency(l) * basis.frequency(l));
        CHECK(std::abs(z.zeta0.value - ref) < 3.0 * z.zeta0.se);
    }
    SUBCASE("zeta4 matches the gaussian-ensemble value") {
        // F_j is linear at alpha = 0, so zeta4 = T sum_l S_jl^2 omega_l^2
        double ref = 0.0;
        for (int l = 1; l <= n; ++l)
            ref += basis.kernel(l, j) * basis.kernel(l, j) * T * basis.frequency(l) *
                   basis.frequency(l);
        CHECK(std::abs(z.zeta4.value - ref) < 3.0 * z.zeta4.se);
    }
    SUBCASE("zeta6 is exact at alpha = 0") {
        // V'' = 1 identically: interior sites give T ((1+1)^2 + 1 + 1) = 6T
        CHECK(z.zeta6.value == doctest::Approx(6.0 * T).epsilon(1e-12));
        const auto z1 = zeta_coefficients(samples, spec, 1);
        CHECK(z1.zeta6.value == doctest::Approx(5.0 * T).epsilon(1e-12));  // one neighbor
    }
    SUBCASE("single-anchor and double-sum zeta4 agree") {
        const auto zd = zeta4_double_sum(samples, spec, j);
        CHECK(std::abs(z.zeta4.value - zd.value) < 3.0 * (z.zeta4.se + zd.se));
    }
    SUBCASE("bead-averaged and single-bead zeta6 agree") {
        const auto z1 = zeta6_single_bead(samples, spec, j);
        CHECK(std::abs(z.zeta6.value - z1.value) < 1e-12);  // both exact here
    }
    SUBCASE("zeta6 equals the distribution-integral form to accumulation accuracy") {
        const int subset[] = {j - 1, j, j + 1};
        const auto m = sample_functional(
            samples, subset, [&](std::span<const double> q) {
                // dF/dq stiffness form of the same integrand
                const double vl = pair_stiffness(q[1] - q[0], spec);
                const double vr = pair_stiffness(q[2] - q[1], spec);
                return T * ((vl + vr) * (vl + vr) + vl * vl + vr * vr);
            });
        CHECK(std::abs(m.value - z.zeta6.value) < 1e-10);
    }
    SUBCASE("momentum cross-check of the zeta2 identity") {
        const auto m = zeta2_sampling_check(20000, p, T, 99);
        CHECK(std::abs(m.value - T) < 3.0 * m.se);
    }
}

TEST_CASE("kubo autocorrelation against the harmonic oracle") {
    const int n = 2, p = 8;
    const double T = 1.0;
    const auto samples = harmonic_samples(n, p, T, 1200, 7);
    const auto spec = ChainSpec::harmonic(n);
    const ModeBasis basis(n);

    KuboOptions opt;
    opt.t_max = 1.4;
    opt.n_times = 15;
    opt.seed = 1234;

    SUBCASE("mode observable") {
        for (int j : {1, 2}) {
            const auto series = kubo_autocorrelation(samples, spec, mode_observable(basis, j), opt);
            for (size_t i = 0; i < series.times.size(); ++i) {
                const double ref = rpmd_harmonic_mode(basis, j, T, series.times[i]);
                CHECK(std::abs(series.values[i] - ref) < 3.0 * series.stderrs[i]);
            }
        }
    }
    SUBCASE("position observable, zeta attached, K(0) = zeta0") {
        const auto series =
            kubo_autocorrelation(samples, spec, position_observable(n, 1), opt);
        REQUIRE(series.zeta.has_value());
        CHECK(std::abs(series.values[0] - series.zeta->zeta0.value) <
              3.0 * (series.stderrs[0] + series.zeta->zeta0.se));
        for (size_t i = 0; i < series.times.size(); ++i) {
            const double ref = rpmd_harmonic_position(basis, 1, T, series.times[i]);
            CHECK(std::abs(series.values[i] - ref) < 3.0 * series.stderrs[i]);
        }
    }
    SUBCASE("time reversal symmetry") {
        auto fwd = opt;
        auto rev = opt;
        rev.time_reversed = true;
        const auto obs = position_observable(n, 1);
        const auto sf = kubo_autocorrelation(samples, spec, obs, fwd);
        const auto sr = kubo_autocorrelation(samples, spec, obs, rev);
        for (size_t i = 0; i < sf.times.size(); ++i)
            CHECK(std::abs(sf.values[i] - sr.values[i]) <
                  3.0 * (sf.stderrs[i] + sr.stderrs[i]));
    }
}

TEST_CASE("sixth-order expansion and validity horizon") {
    SUBCASE("T6 at t = 0 is zeta0") {
        ZetaSet z;
        z.zeta0 = {3.1, 0.0};
        z.zeta2 = {1.0, 0.0};
        z.zeta4 = {2.0, 0.0};
        z.zeta6 = {6.0, 0.0};
        const double t0[] = {0.0};
        CHECK(t6_expansion(z, t0)[0] == 3.1);
    }
    SUBCASE("harmonic zeta set reproduces the cosine Taylor polynomial") {
        const ModeBasis basis(1);
        const double w = basis.frequency(1), T = 0.8;
        ZetaSet z;
        z.zeta0 = {T / (w * w), 0.0};
        z.zeta2 = {T, 0.0};
        z.zeta4 = {T * w * w, 0.0};
        z.zeta6 = {T * w * w * w * w, 0.0};
        std::vector<double> ts;
        for (int i = 0; i <= 10; ++i) ts.push_back(0.2 * i);
        const auto t6 = t6_expansion(z, ts);
        for (size_t i = 0; i < ts.size(); ++i) {
            const double x = w * ts[i];
            const double taylor =
                1.0 - x * x / 2.0 + std::pow(x, 4) / 24.0 - std::pow(x, 6) / 720.0;
            CHECK(t6[i] == doctest::Approx(T / (w * w) * taylor).epsilon(1e-10));
        }
    }
    SUBCASE("horizon value for the N = 8 chain") {
        const ModeBasis basis(8);
        const double t_eps = validity_horizon(0.1, basis);
        CHECK(std::abs(t_eps - 1.4) <= 0.05);
        // the stiffest mode controls the minimum
        CHECK(t_eps == doctest::Approx(validity_horizon(0.1, basis)).epsilon(1e-12));
        const ModeBasis soft(1);
        CHECK(validity_horizon(0.1, soft) > t_eps);  // softer chain, longer horizon
    }
    SUBCASE("epsilon validation") {
        const ModeBasis basis(4);
        CHECK_THROWS_AS(validity_horizon(0.0, basis), std::invalid_argument);
        CHECK_THROWS_AS(validity_horizon(1.5, basis), std::invalid_argument);
    }
}
