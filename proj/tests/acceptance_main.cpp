// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion (sub-results indented).
// Exit status is the number of failed criteria.
//
// Criteria 7 (overlay clause) and 9 (5% convergence clause) encode targets
// that measurement shows cannot hold as stated; they are run faithfully and
// reported honestly, with the measured numbers printed next to the verdict.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "fpu/estimators.hpp"
#include "fpu/harmonic_oracle.hpp"
#include "fpu/quadrature.hpp"
#include "fpu/rng.hpp"
#include "fpu/rpmd.hpp"
#include "fpu/sampler.hpp"
#include "fpu/stats.hpp"

using namespace fpu;

namespace {

struct Ctx {
    int failures = 0;
    std::vector<std::string> lines;
    void line(const char* fmt, ...) {
        char buf[512];
        va_list args;
        va_start(args, fmt);
        std::vsnprintf(buf, sizeof buf, fmt, args);
        va_end(args);
        std::printf("       %s\n", buf);
    }
    void verdict(int id, const std::string& name, bool pass, double seconds) {
        std::printf("[%2d] %-58s %s  (%.1f s)\n", id, name.c_str(),
                    pass ? "PASS" : "FAIL", seconds);
        if (!pass) ++failures;
    }
};

double now_sec() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

SampleSet run_sampler(int n, double alpha, double T, int p, std::optional<double> dt,
                      long burn, long stride, long n_samples, std::uint64_t seed,
                      double tau_tilde = 0.0) {
    SamplerConfig cfg;
    cfg.chain = alpha == 0.0 ? ChainSpec::harmonic(n) : ChainSpec::make(n, alpha, alpha);
    cfg.temperature = T;
    cfg.n_beads = p;
    cfg.dt = dt;
    cfg.n_burn = burn;
    cfg.stride = stride;
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    if (tau_tilde > 0.0) cfg.nhc.tau_tilde = tau_tilde;
    PimdSampler s(cfg);
    return s.run();
}

// bead-averaged <eta_j^2> with blocked errors
std::vector<MeanSe> mode_variances(const SampleSet& set) {
    const ModeBasis basis(set.n);
    std::vector<double> eta(set.n);
    std::vector<MeanSe> out(set.n);
    std::vector<double> per_snap(set.n_samples());
    for (int j = 1; j <= set.n; ++j) {
        for (long s = 0; s < set.n_samples(); ++s) {
            double acc = 0.0;
            for (int k = 1; k <= set.p; ++k) {
                basis.to_modes(set.bead(s, k), eta);
                acc += eta[j - 1] * eta[j - 1];
            }
            per_snap[s] = acc / set.p;
        }
        out[j - 1] = mean_with_se(per_snap, 32);
    }
    return out;
}

// --------------------------------------------------------------------------

void criterion_1(Ctx& ctx) {
    const double t0 = now_sec();
    bool pass = true;
    for (const double T : {0.01, 1.0})
        for (const int p : {1, 16}) {
            const auto set = run_sampler(8, 5.0, T, p, std::nullopt, 2000, 100, 2000,
                                         1001 + p + int(100 * T));
            const long production = 100L * 2000L;
            const bool ok = set.info.max_drift < 1e-6 && production >= 200000;
            pass = pass && ok;
            ctx.line("P=%-2d T=%-5g: drift %.2e over %ld production steps (dt=%g, n_R=%d) %s",
                     p, T, set.info.max_drift, production, set.info.dt, set.info.n_respa,
                     ok ? "ok" : "FAIL");
        }
    ctx.verdict(1, "energy conservation < 1e-6 (N=8, M=5, alpha=5)", pass, now_sec() - t0);
}

void criterion_2(Ctx& ctx) {
    const double t0 = now_sec();
    const auto set = run_sampler(8, 0.0, 1.0, 1, 0.05, 8000, 60, 5000, 2101, 1.0);
    const auto vars = mode_variances(set);
    const ModeBasis basis(8);
    bool pass = true;
    double worst = 0.0;
    for (int j = 1; j <= 8; ++j) {
        const double ref = mode_variance_classical(basis, j, 1.0);
        const double z = std::abs(vars[j - 1].value - ref) / vars[j - 1].se;
        worst = std::max(worst, z);
        if (z > 3.0) {
            pass = false;
            ctx.line("mode %d: %.4f +- %.4f vs T/omega^2 = %.4f (z = %.2f) FAIL", j,
                     vars[j - 1].value, vars[j - 1].se, ref, z);
        }
    }
    ctx.line("5000 samples, all modes within 3 s.e. (worst pull %.2f)", worst);
    ctx.verdict(2, "classical harmonic variances (P=1, T=1)", pass, now_sec() - t0);
}

void criterion_3(Ctx& ctx) {
    const double t0 = now_sec();
    const double T = 0.25;
    const ModeBasis basis(8);
    struct Run {
        int p;
        std::vector<MeanSe> vars;
    };
    std::vector<Run> runs;
    runs.push_back({16, mode_variances(run_sampler(8, 0.0, T, 16, 0.05, 8000, 60, 6000, 2316, 1.0))});
    runs.push_back({32, mode_variances(run_sampler(8, 0.0, T, 32, 0.035, 8000, 60, 8000, 2332, 1.0))});
    runs.push_back({64, mode_variances(run_sampler(8, 0.0, T, 64, 0.025, 8000, 60, 14000, 2364, 1.0))});

    bool pass = true;
    double worst_rel = 0.0;
    for (int j = 1; j <= 8; ++j) {
        const double ref = mode_variance_quantum(basis, j, T);
        const auto& v64 = runs[2].vars[j - 1];
        const double rel = std::abs(v64.value - ref) / ref;
        worst_rel = std::max(worst_rel, rel);
        if (rel > 0.05) {
            pass = false;
            ctx.line("mode %d at P=64: %.4f vs sigma_q^2 = %.4f (off %.1f%%) FAIL", j,
                     v64.value, ref, 100 * rel);
        }
        // monotone approach within statistical slack
        for (size_t r = 0; r + 1 < runs.size(); ++r) {
            const auto& lo = runs[r].vars[j - 1];
            const auto& hi = runs[r + 1].vars[j - 1];
            const double slack = 2.0 * (lo.se + hi.se);
            if (lo.value > hi.value + slack) {
                pass = false;
                ctx.line("mode %d: P=%d estimate %.4f exceeds P=%d estimate %.4f + slack FAIL",
                         j, runs[r].p, lo.value, runs[r + 1].p, hi.value);
            }
        }
    }
    ctx.line("P=64 worst deviation %.2f%% (tolerance 5%%); P in {16,32,64} monotone within 2 s.e.",
             100 * worst_rel);
    ctx.verdict(3, "quantum harmonic variances (P->64, T=0.25)", pass, now_sec() - t0);
}

void criterion_4(Ctx& ctx) {
    const double t0 = now_sec();
    const double T = 1.0;
    const ModeBasis basis(8);
    std::vector<Observable> obs;
    for (int j = 1; j <= 8; ++j) obs.push_back(mode_observable(basis, j));
    KuboOptions opt;
    opt.t_max = 1.4;
    opt.n_times = 15;
    opt.seed = 424242;

    bool pass = true;
    for (const int p : {1, 64}) {
        // the soft-mode relaxation time sets the burn-in and stride here
        const auto set = (p == 1)
                             ? run_sampler(8, 0.0, T, 1, 0.05, 8000, 60, 1200, 2401, 1.0)
                             : run_sampler(8, 0.0, T, 64, 0.006, 20000, 400, 700, 2464, 1.0);
        const auto series = kubo_autocorrelation_multi(set, ChainSpec::harmonic(8), obs, opt);
        double worst = 0.0;
        int bad = 0;
        for (int j = 1; j <= 8; ++j)
            for (size_t i = 0; i < series[j - 1].times.size(); ++i) {
                const double ref = rpmd_harmonic_mode(basis, j, T, series[j - 1].times[i]);
                const double z =
                    std::abs(series[j - 1].values[i] - ref) / series[j - 1].stderrs[i];
                worst = std::max(worst, z);
                if (z > 3.0) ++bad;
            }
        ctx.line("P=%-2d: %zu grid points x 8 modes, worst pull %.2f, outliers %d", p,
                 series[0].times.size(), worst, bad);
        if (bad > 0) pass = false;
    }
    ctx.verdict(4, "RPMD harmonic Kubo correlator (P in {1,64}, t <= 1.4)", pass,
                now_sec() - t0);
}

void criterion_5(Ctx& ctx) {
    const double t0 = now_sec();
    const double T = 1.0;
    const auto mc = zeta2_sampling_check(200000, 16, T, 515);
    const bool mc_ok = std::abs(mc.value - T) < 3.0 * mc.se;
    // the reported coefficient is the analytic constant
    const auto set = run_sampler(4, 0.0, T, 4, 0.05, 2000, 20, 400, 2505, 1.0);
    const auto z = zeta_coefficients(set, ChainSpec::harmonic(4), 2);
    const bool exact_ok = (z.zeta2.value == T) && (z.zeta2.se == 0.0);
    ctx.line("Monte-Carlo <p_P^2> = %.5f +- %.5f vs T = %g (%s); reported zeta2 = T exactly (%s)",
             mc.value, mc.se, T, mc_ok ? "ok" : "FAIL", exact_ok ? "ok" : "FAIL");
    ctx.verdict(5, "zeta2 identity", mc_ok && exact_ok, now_sec() - t0);
}

void criterion_6(Ctx& ctx) {
    const double t0 = now_sec();
    const ModeBasis basis(8);
    const double t_eps = validity_horizon(0.1, basis);
    const bool pass = std::abs(t_eps - 1.4) <= 0.05;
    ctx.line("t_eps(epsilon=0.1, N=8) = %.4f (target 1.4 +- 0.05)", t_eps);
    ctx.verdict(6, "sixth-order validity horizon", pass, now_sec() - t0);
}

void criterion_7(Ctx& ctx) {
    const double t0 = now_sec();
    bool quad_ok = true;
    for (const auto& [T, a] :
         {std::pair{0.1, 1.0}, std::pair{1.0, 5.0}, std::pair{5.0, 5.0}}) {
        auto weight = [&, T = T, a = a](double q) {
            return std::exp(-(q * q + 0.5 * a * q * q * q * q) / T);
        };
        auto weight_q2 = [&, T = T, a = a](double q) {
            return q * q * std::exp(-(q * q + 0.5 * a * q * q * q * q) / T);
        };
        const double z_quad =
            integrate_decaying(weight, 0.0, std::max(1.0, 2.0 * std::sqrt(T)), 1e-11);
        const double f_quad =
            integrate_decaying(weight_q2, 0.0, std::max(1.0, 2.0 * std::sqrt(T)), 1e-11) /
            z_quad;
        const double dz = std::abs(quartic_site_partition(T, a) - z_quad) / z_quad;
        const double df = std::abs(quartic_site_moment(T, a) - f_quad) / f_quad;
        if (dz > 1e-8 || df > 1e-8) quad_ok = false;
        ctx.line("closed form vs quadrature at (T=%g, alpha=%g): dZ=%.1e, df=%.1e", T, a,
                 dz, df);
    }

    // overlay clause, run as stated; see the printed analysis
    bool overlay_ok = true;
    std::vector<double> ratios;
    for (const auto& [T, a] :
         {std::pair{1.0, 1.0}, std::pair{1.0, 5.0}, std::pair{5.0, 5.0}}) {
        const auto set = run_sampler(8, a, T, 1, T >= 5.0 ? 0.008 : 0.02, 6000, 40, 6000,
                                     2700 + int(T) + int(a));
        const int j4[] = {4};
        const int pw[] = {2};
        const auto m = sample_moment(set, j4, pw);
        const double f = quartic_site_moment(T, a);
        const double rel = std::abs(m.value - f) / f;
        ratios.push_back(m.value / f);
        if (rel > 0.10) overlay_ok = false;
        ctx.line("overlay at (T=%g, alpha=%g): <q4^2> = %.4f +- %.4f, f(T) = %.4f, off %.0f%%",
                 T, a, m.value, m.se, f, 100 * rel);
    }
    ctx.line("overlay clause fails by construction: the chain-geometry factor");
    ctx.line("j(N+1-j)/(N+1)*sqrt(2) = 3.14 separates <q4^2> from the single-site f(T);");
    ctx.line("measured ratios %.2f / %.2f / %.2f track that constant (shape, not value)",
             ratios[0], ratios[1], ratios[2]);
    ctx.verdict(7, "Bessel moments: quadrature 1e-8 + f(T) overlay 10%",
                quad_ok && overlay_ok, now_sec() - t0);
}

void criterion_8(Ctx& ctx) {
    const double t0 = now_sec();
    bool pass = true;
    // low temperature: quantum broadening of the central particle
    for (const double a : {1.0, 5.0}) {
        const auto cl = run_sampler(8, a, 0.01, 1, 0.02, 6000, 50, 5000, 2801 + int(a));
        const auto qu = run_sampler(8, a, 0.01, 16, 0.02, 6000, 50, 5000, 2816 + int(a));
        const int j4[] = {4};
        const int pw[] = {2};
        const auto vc = sample_moment(cl, j4, pw);
        const auto vq = sample_moment(qu, j4, pw);
        const double sep = (vq.value - vc.value) / std::hypot(vc.se, vq.se);
        if (sep < 3.0) pass = false;
        ctx.line("T=0.01 alpha=%g: var(P=16) = %.4g vs var(P=1) = %.4g, separation %.1f s.e. %s",
                 a, vq.value, vc.value, sep, sep >= 3.0 ? "ok" : "FAIL");
    }
    // high temperature: classical collapse (KS on single-bead samples)
    {
        const auto cl = run_sampler(8, 5.0, 5.0, 1, 0.008, 6000, 400, 3000, 2851);
        const auto qu = run_sampler(8, 5.0, 5.0, 16, 0.005, 6000, 400, 3000, 2866);
        const auto ks =
            ks_two_sample(particle_samples(cl, 4, 1), particle_samples(qu, 4, 1), 0.01);
        if (!ks.pass) pass = false;
        ctx.line("T=5 alpha=5: KS(P=16 vs P=1) D = %.4f, 1%% critical %.4f %s", ks.statistic,
                 ks.critical, ks.pass ? "ok" : "FAIL");
    }
    ctx.verdict(8, "quantum broadening at T=0.01, collapse at T=5", pass, now_sec() - t0);
}

void criterion_9(Ctx& ctx) {
    const double t0 = now_sec();
    const double T = 1.0;
    auto zeta_at = [&](double a, int p, std::uint64_t seed) {
        const auto set = (p == 1)
                             ? run_sampler(8, a, T, 1, 0.02, 6000, 60, 12000, seed)
                             : run_sampler(8, a, T, 16, 0.02, 6000, 120, 9000, seed);
        return zeta_coefficients(set, ChainSpec::make(8, a, a), 4);
    };
    const auto z1_04 = zeta_at(0.4, 1, 2904);
    const auto z16_04 = zeta_at(0.4, 16, 2916);
    const auto z1_01 = zeta_at(0.1, 1, 2901);
    const auto z16_01 = zeta_at(0.1, 16, 2917);

    const double sep6 = (z16_04.zeta6.value - z1_04.zeta6.value) /
                        std::hypot(z16_04.zeta6.se, z1_04.zeta6.se);
    const bool order_ok = sep6 >= 3.0;
    ctx.line("alpha=0.4: zeta6 quantum %.3f +- %.3f vs classical %.3f +- %.3f (separation %.1f s.e.) %s",
             z16_04.zeta6.value, z16_04.zeta6.se, z1_04.zeta6.value, z1_04.zeta6.se, sep6,
             order_ok ? "ok" : "FAIL");

    auto rel_gap = [](const ZetaEstimate& a, const ZetaEstimate& b) {
        return std::abs(a.value - b.value) / (0.5 * (a.value + b.value));
    };
    const double gap4_01 = rel_gap(z16_01.zeta4, z1_01.zeta4);
    const double gap6_01 = rel_gap(z16_01.zeta6, z1_01.zeta6);
    const double gap4_04 = rel_gap(z16_04.zeta4, z1_04.zeta4);
    const double gap6_04 = rel_gap(z16_04.zeta6, z1_04.zeta6);
    const bool five_ok = gap4_01 < 0.05 && gap6_01 < 0.05;
    ctx.line("alpha=0.1: |quantum-classical| gaps zeta4 %.1f%%, zeta6 %.1f%% (clause demands < 5%%) %s",
             100 * gap4_01, 100 * gap6_01, five_ok ? "ok" : "FAIL");
    ctx.line("convergence toward alpha -> 0+: zeta4 gap %.1f%% -> %.1f%%, zeta6 gap %.1f%% -> %.1f%%",
             100 * gap4_04, 100 * gap4_01, 100 * gap6_04, 100 * gap6_01);
    if (!five_ok)
        ctx.line("the zeta6 gap at alpha=0.1 is physical (first order in the quantum bond");
    if (!five_ok)
        ctx.line("broadening), so the 5%% clause cannot hold; ordering facts above do");
    ctx.verdict(9, "zeta ordering and alpha -> 0 convergence", order_ok && five_ok,
                now_sec() - t0);
}

void criterion_10(Ctx& ctx) {
    const double t0 = now_sec();
    bool pass = true;
    Rng rng(314159);

    {  // staging round trips at 1e-12
        bool ok = true;
        for (int p : {2, 16, 64}) {
            BeadMatrix q(4, p);
            for (double& v : q.a) v = rng.gauss();
            const auto back = unstage(stage(q));
            for (size_t i = 0; i < q.size(); ++i)
                ok = ok && std::abs(back.a[i] - q.a[i]) < 1e-12;
        }
        ctx.line("staging round trip (1e-12): %s", ok ? "ok" : "FAIL");
        pass = pass && ok;
    }
    {  // decoupling identity at 1e-10
        bool ok = true;
        for (int p : {3, 32}) {
            BeadMatrix q(4, p);
            for (double& v : q.a) v = rng.gauss();
            const double a = spring_sum_primitive(q);
            const double b = spring_sum_staged(stage(q));
            ok = ok && std::abs(a - b) < 1e-10 * std::max(1.0, a);
        }
        ctx.line("spring decoupling identity (1e-10): %s", ok ? "ok" : "FAIL");
        pass = pass && ok;
    }
    {  // staging forces vs dense chain rule at 1e-10
        const auto spec = ChainSpec::make(4, 5.0, 5.0);
        const int n = 4, p = 8;
        BeadMatrix q(n, p);
        for (double& v : q.a) v = rng.gauss(0.0, 0.3);
        BeadMatrix fu;
        staging_forces(q, spec, fu);
        BeadMatrix f(n, p);
        for (int k = 1; k <= p; ++k) chain_forces(q.bead(k), spec, f.bead(k));
        bool ok = true;
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= p; ++k) {
                double acc = 0.0;
                for (int m = 1; m <= p; ++m) {
                    const double jac = (k == 1) ? 1.0
                                      : (m >= 2 && m <= k)
                                          ? double(m - 1) / double(k - 1)
                                          : 0.0;
                    acc += f(j, m) * jac;
                }
                ok = ok && std::abs(fu(j, k) - acc / p) < 1e-10;
            }
        ctx.line("staging forces vs dense chain-rule oracle (1e-10): %s", ok ? "ok" : "FAIL");
        pass = pass && ok;
    }
    {  // force vs finite-difference gradient at 1e-6 relative
        const auto spec = ChainSpec::make(6, 5.0, 5.0);
        std::vector<double> q(6), f(6);
        for (double& v : q) v = rng.gauss(0.0, 0.4);
        chain_forces(q, spec, f);
        bool ok = true;
        const double h = 1e-5;
        for (int j = 0; j < 6; ++j) {
            auto qp = q, qm = q;
            qp[j] += h;
            qm[j] -= h;
            const double fd = -(chain_potential(qp, spec) - chain_potential(qm, spec)) / (2 * h);
            ok = ok && std::abs(f[j] - fd) <= 1e-6 * std::max(1.0, std::abs(fd));
        }
        ctx.line("chain forces vs central differences (1e-6 rel): %s", ok ? "ok" : "FAIL");
        pass = pass && ok;
    }
    {  // ring-polymer frequencies vs dense eigensolver at 1e-8
        const int n = 3, p = 6;
        const double T = 0.6;
        const ModeBasis basis(n);
        const int dim = n * p;
        std::vector<double> K(size_t(dim) * dim, 0.0);
        const double pt2 = double(p) * double(p) * T * T;
        for (int k = 0; k < p; ++k)
            for (int j = 0; j < n; ++j) {
                const int i = k * n + j;
                const double w = basis.frequency(j + 1);
                K[size_t(i) * dim + i] += pt2 * 2.0 + w * w;
                K[size_t(i) * dim + ((k + 1) % p) * n + j] -= pt2;
                K[size_t(i) * dim + ((k - 1 + p) % p) * n + j] -= pt2;
            }
        // Jacobi sweeps
        auto at = [&](int r, int c) -> double& { return K[size_t(r) * dim + c]; };
        for (int sweep = 0; sweep < 100; ++sweep) {
            double off = 0.0;
            for (int r = 0; r < dim; ++r)
                for (int c = r + 1; c < dim; ++c) off += at(r, c) * at(r, c);
            if (off < 1e-24) break;
            for (int r = 0; r < dim; ++r)
                for (int c = r + 1; c < dim; ++c) {
                    if (std::abs(at(r, c)) < 1e-300) continue;
                    const double theta = (at(c, c) - at(r, r)) / (2.0 * at(r, c));
                    const double t = (theta >= 0 ? 1.0 : -1.0) /
                                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double cs = 1.0 / std::sqrt(t * t + 1.0), sn = t * cs;
                    for (int i = 0; i < dim; ++i) {
                        const double mri = at(r, i), mci = at(c, i);
                        at(r, i) = cs * mri - sn * mci;
                        at(c, i) = sn * mri + cs * mci;
                    }
                    for (int i = 0; i < dim; ++i) {
                        const double mir = at(i, r), mic = at(i, c);
                        at(i, r) = cs * mir - sn * mic;
                        at(i, c) = sn * mir + cs * mic;
                    }
                }
        }
        std::vector<double> ev(dim), expect;
        for (int i = 0; i < dim; ++i) ev[i] = at(i, i);
        for (int k = 1; k <= p; ++k)
            for (int j = 1; j <= n; ++j) {
                const double o = rp_normal_frequency(basis, j, k, T, p);
                expect.push_back(o * o);
            }
        std::sort(ev.begin(), ev.end());
        std::sort(expect.begin(), expect.end());
        bool ok = true;
        for (int i = 0; i < dim; ++i)
            ok = ok && std::abs(ev[i] - expect[i]) < 1e-8 * (1.0 + expect[i]);
        ctx.line("Omega_{j,k} vs dense eigensolver (1e-8): %s", ok ? "ok" : "FAIL");
        pass = pass && ok;
    }
    {  // Poisson kernel closed form vs Hermite brute force at 1e-8
        const ModeBasis basis(8);
        bool ok = true;
        for (int j : {3, 8}) {
            const double w = basis.frequency(j), T = 0.6;
            for (double e : {-1.2, 0.0, 0.9}) {
                const double x = std::sqrt(w) * e;
                const double boltz = std::exp(-w / T);
                double h_prev = 0.0, h = 1.0, weight = 1.0;
                double sum = 1.0;
                for (int m = 0; m < 60; ++m) {
                    const double h_next = x * std::sqrt(2.0 / (m + 1)) * h -
                                          std::sqrt(double(m) / (m + 1)) * h_prev;
                    h_prev = h;
                    h = h_next;
                    weight *= boltz;
                    sum += h * h * weight;
                }
                const double brute = (1.0 - boltz) * std::sqrt(w / std::numbers::pi) *
                                     std::exp(-w * e * e) * sum;
                const int subset[] = {j};
                const double eta[] = {e};
                ok = ok && std::abs(mode_distribution(basis, subset, eta, T) - brute) < 1e-8;
            }
        }
        ctx.line("Poisson-kernel closed form vs Hermite sum (1e-8): %s", ok ? "ok" : "FAIL");
        pass = pass && ok;
    }
    {  // mirror symmetry + replica equivalence at the 1% level; T chosen so
        // the stride covers the measured position decorrelation time
        const auto set = run_sampler(8, 5.0, 0.5, 16, 0.02, 6000, 150, 3000, 21016);
        bool ok = true;
        for (int j = 1; j <= 4; ++j) ok = ok && mirror_symmetry_ks(set, j).pass;
        int bad_beads = 0;
        for (const auto& r : replica_equivalence_ks(set, 4))
            if (!r.pass) ++bad_beads;
        ok = ok && bad_beads == 0;
        ctx.line("mirror-symmetry and replica-equivalence KS at 1%% (T=0.5, alpha=5, P=16): %s",
                 ok ? "ok" : "FAIL");
        pass = pass && ok;
    }
    {  // Suzuki-Yoshida order conditions at 1e-12
        bool ok = true;
        try {
            const auto w = suzuki_yoshida_weights(6);
            double s1 = 0, s3 = 0, s5 = 0;
            for (double v : w) {
                s1 += v;
                s3 += v * v * v;
                s5 += v * v * v * v * v;
            }
            ok = std::abs(s1 - 1.0) < 1e-12 && std::abs(s3) < 1e-12 && std::abs(s5) < 1e-12;
        } catch (...) {
            ok = false;
        }
        ctx.line("Suzuki-Yoshida order conditions (1e-12): %s", ok ? "ok" : "FAIL");
        pass = pass && ok;
    }
    ctx.verdict(10, "structural property suite", pass, now_sec() - t0);
}

}  // namespace

int main(int argc, char** argv) {
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    Ctx ctx;
    const double t0 = now_sec();
    using Fn = void (*)(Ctx&);
    const Fn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                           criterion_5, criterion_6, criterion_7, criterion_8,
                           criterion_9, criterion_10};
    for (int i = 0; i < 10; ++i) {
        if (only != 0 && only != i + 1) continue;
        criteria[i](ctx);
    }
    std::printf("---\n%d criterion(s) failed; %.1f s total\n", ctx.failures,
                now_sec() - t0);
    return ctx.failures;
}
