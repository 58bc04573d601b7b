#include "fpu/rpmd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fpu/errors.hpp"
#include "fpu/harmonic_oracle.hpp"
#include "fpu/rng.hpp"

namespace fpu {

Observable position_observable(int n_particles, int j) {
    if (j < 1 || j > n_particles)
        throw std::out_of_range("position_observable: site index out of range");
    Observable o;
    o.id = "q:" + std::to_string(j);
    o.coeff.assign(n_particles, 0.0);
    o.coeff[j - 1] = 1.0;
    return o;
}

Observable mode_observable(const ModeBasis& basis, int j) {
    if (j < 1 || j > basis.size())
        throw std::out_of_range("mode_observable: mode index out of range");
    Observable o;
    o.id = "eta:" + std::to_string(j);
    o.coeff.resize(basis.size());
    for (int l = 1; l <= basis.size(); ++l) o.coeff[l - 1] = basis.kernel(j, l);
    return o;
}

Observable parse_observable(const std::string& id, int n_particles) {
    const auto colon = id.find(':');
    if (colon != std::string::npos) {
        const std::string kind = id.substr(0, colon);
        const int j = std::stoi(id.substr(colon + 1));
        if (kind == "q") return position_observable(n_particles, j);
        if (kind == "eta") return mode_observable(ModeBasis(n_particles), j);
    }
    throw std::invalid_argument("parse_observable: unsupported observable '" + id +
                                "' (linear observables q:<j> or eta:<j> only)");
}

void rpmd_forces(const BeadMatrix& q, double T, const ChainSpec& spec, BeadMatrix& f) {
    const int n = q.n, p = q.p;
    if (f.n != n || f.p != p) f = BeadMatrix(n, p);
    const double spring = double(p) * double(p) * T * T;
    for (int k = 1; k <= p; ++k) {
        chain_forces(q.bead(k), spec, f.bead(k));
        const int km = (k == 1) ? p : k - 1;
        const int kp = (k == p) ? 1 : k + 1;
        for (int j = 1; j <= n; ++j)
            f(j, k) -= spring * (2.0 * q(j, k) - q(j, km) - q(j, kp));
    }
}

void rpmd_step(RingPolymerState& state, double T, const ChainSpec& spec, double dt,
               BeadMatrix& force_buf) {
    if (state.rep != Representation::primitive)
        throw std::invalid_argument("rpmd_step: primitive representation required");
    const size_t nd = state.pos.size();
    double* p = state.mom.a.data();
    double* q = state.pos.a.data();
    const double* f = force_buf.a.data();
    for (size_t i = 0; i < nd; ++i) p[i] += 0.5 * dt * f[i];
    for (size_t i = 0; i < nd; ++i) q[i] += dt * p[i];
    rpmd_forces(state.pos, T, spec, force_buf);
    f = force_buf.a.data();
    for (size_t i = 0; i < nd; ++i) p[i] += 0.5 * dt * f[i];
}

double rpmd_default_dt(const ModeBasis& basis, double T, int p_beads) {
    const double omega_max =
        rp_normal_frequency(basis, basis.size(), p_beads / 2 + 1, T, p_beads);
    return 0.1 / omega_max;
}

namespace {
MeanSe blocked(const std::vector<double>& y) { return mean_with_se(y, 32); }
}  // namespace

ZetaSet zeta_coefficients(const SampleSet& samples, const ChainSpec& spec, int j) {
    const int n = samples.n, p = samples.p;
    if (j < 1 || j > n) throw std::out_of_range("zeta_coefficients: site index out of range");
    const long ns = samples.n_samples();
    if (ns < 1) throw std::invalid_argument("zeta_coefficients: empty sample set");
    const double T = samples.temperature;

    std::vector<double> y0(ns), y4(ns), y6(ns);
    std::vector<double> fk(p);
    for (long s = 0; s < ns; ++s) {
        double centroid = 0.0, stiff = 0.0;
        for (int k = 1; k <= p; ++k) {
            const auto bead = samples.bead(s, k);
            centroid += bead[j - 1];
            fk[k - 1] = site_force(bead, j, spec);
            const auto st = site_stiffness(bead, j, spec);
            double sum = (st.left + st.right) * (st.left + st.right);  // d F_j / d q_j
            if (j >= 2) sum += st.left * st.left;                      // d F_j / d q_{j-1}
            if (j <= n - 1) sum += st.right * st.right;                // d F_j / d q_{j+1}
            stiff += sum;
        }
        centroid /= double(p);
        y0[s] = centroid * centroid;
        double s4 = 0.0;
        for (int k = 0; k < p; ++k) s4 += fk[k] * fk[0];
        y4[s] = s4 / double(p);
        y6[s] = T * stiff / double(p);
    }
    ZetaSet z;
    z.site = j;
    z.temperature = T;
    const auto m0 = blocked(y0);
    z.zeta0 = {m0.value, m0.se};
    z.zeta2 = {T, 0.0};
    const auto m4 = blocked(y4);
    z.zeta4 = {m4.value, m4.se};
    const auto m6 = blocked(y6);
    z.zeta6 = {m6.value, m6.se};
    return z;
}

ZetaEstimate zeta4_double_sum(const SampleSet& samples, const ChainSpec& spec, int j) {
    const long ns = samples.n_samples();
    const int p = samples.p;
    std::vector<double> y(ns);
    for (long s = 0; s < ns; ++s) {
        double fp = 0.0;
        for (int k = 1; k <= p; ++k) fp += site_force(samples.bead(s, k), j, spec);
        fp /= double(p);
        y[s] = fp * fp;
    }
    const auto m = blocked(y);
    return {m.value, m.se};
}

ZetaEstimate zeta6_single_bead(const SampleSet& samples, const ChainSpec& spec, int j) {
    const long ns = samples.n_samples();
    const int n = samples.n;
    std::vector<double> y(ns);
    for (long s = 0; s < ns; ++s) {
        const auto bead = samples.bead(s, 1);
        const auto st = site_stiffness(bead, j, spec);
        double sum = (st.left + st.right) * (st.left + st.right);
        if (j >= 2) sum += st.left * st.left;
        if (j <= n - 1) sum += st.right * st.right;
        y[s] = samples.temperature * sum;
    }
    const auto m = blocked(y);
    return {m.value, m.se};
}

MeanSe zeta2_sampling_check(long n_draws, int p_beads, double T, std::uint64_t seed) {
    std::vector<double> y(n_draws);
    const double sigma = std::sqrt(double(p_beads) * T);
    Rng rng = substream(seed, 0x7a32ULL);
    for (long s = 0; s < n_draws; ++s) {
        double c = 0.0;
        for (int k = 0; k < p_beads; ++k) c += sigma * rng.gauss();
        c /= double(p_beads);
        y[s] = c * c;
    }
    return mean_with_se(y, 32);
}

std::vector<CorrelationSeries> kubo_autocorrelation_multi(
    const SampleSet& samples, const ChainSpec& spec,
    std::span<const Observable> observables, const KuboOptions& opt) {
    const int n = samples.n, p = samples.p;
    const int nobs = int(observables.size());
    if (nobs < 1) throw std::invalid_argument("kubo_autocorrelation: no observables");
    for (const auto& obs : observables)
        if (int(obs.coeff.size()) != n)
            throw std::invalid_argument("kubo_autocorrelation: observable length mismatch");
    const long ns_all = samples.n_samples();
    if (ns_all < 2) throw std::invalid_argument("kubo_autocorrelation: empty sample set");
    const long ns = (opt.max_samples > 0) ? std::min(opt.max_samples, ns_all) : ns_all;
    const double T = samples.temperature;
    const ModeBasis basis(n);

    const double t_max = (opt.t_max > 0.0) ? opt.t_max : validity_horizon(opt.epsilon, basis);
    const int nt = std::max(2, opt.n_times);
    const double grid_dt = t_max / double(nt - 1);
    const double dt_pref = opt.dt.value_or(rpmd_default_dt(basis, T, p));
    const long per_out = std::max<long>(1, long(std::ceil(grid_dt / dt_pref - 1e-12)));
    const double dt = (opt.time_reversed ? -1.0 : 1.0) * grid_dt / double(per_out);
    const std::uint64_t seed = (opt.seed != 0) ? opt.seed : samples.seed;
    const double sigma_p = std::sqrt(double(p) * T);

    // per-sample rows of A_P(0) * A_P(t_i); reduction order is fixed afterwards
    std::vector<double> rows(size_t(ns) * nt * nobs);
    std::vector<char> failed(ns, 0);

#pragma omp parallel for schedule(static)
    for (long s = 0; s < ns; ++s) {
        RingPolymerState st(n, p, Representation::primitive);
        std::copy_n(samples.snapshot(s).data(), size_t(n) * p, st.pos.a.data());
        Rng rng = substream(mix_seed(seed, 0x52504dULL), std::uint64_t(s));
        for (double& v : st.mom.a) v = sigma_p * rng.gauss();

        auto a_p = [&](const Observable& obs) {
            double acc = 0.0;
            for (int k = 1; k <= p; ++k) {
                const auto bead = st.pos.bead(k);
                double a = 0.0;
                for (int l = 0; l < n; ++l) a += obs.coeff[l] * bead[l];
                acc += a;
            }
            return acc / double(p);
        };

        BeadMatrix fbuf;
        rpmd_forces(st.pos, T, spec, fbuf);
        std::vector<double> a0(nobs);
        for (int o = 0; o < nobs; ++o) a0[o] = a_p(observables[o]);
        double* row = rows.data() + size_t(s) * nt * nobs;
        for (int o = 0; o < nobs; ++o) row[o] = a0[o] * a0[o];
        bool ok = true;
        for (int i = 1; i < nt && ok; ++i) {
            for (long u = 0; u < per_out; ++u) rpmd_step(st, T, spec, dt, fbuf);
            for (int o = 0; o < nobs; ++o) {
                const double a = a_p(observables[o]);
                if (!std::isfinite(a)) {
                    ok = false;
                    break;
                }
                row[size_t(i) * nobs + o] = a0[o] * a;
            }
        }
        if (!ok) failed[s] = 1;
    }
    for (long s = 0; s < ns; ++s)
        if (failed[s])
            throw NumericalError("kubo_autocorrelation: trajectory blow-up at sample " +
                                 std::to_string(s));

    std::vector<CorrelationSeries> result(nobs);
    std::vector<double> col(ns);
    for (int o = 0; o < nobs; ++o) {
        CorrelationSeries& out = result[o];
        out.observable_id = observables[o].id;
        out.n = n;
        out.p = p;
        out.temperature = T;
        out.alpha = samples.alpha;
        out.beta = samples.beta;
        out.times.resize(nt);
        out.values.resize(nt);
        out.stderrs.resize(nt);
        for (int i = 0; i < nt; ++i) {
            out.times[i] = grid_dt * i;
            for (long s = 0; s < ns; ++s) col[s] = rows[(size_t(s) * nt + i) * nobs + o];
            const auto m = mean_with_se(col, 32);
            out.values[i] = m.value;
            out.stderrs[i] = m.se;
        }
        if (out.observable_id.rfind("q:", 0) == 0) {
            const int j = std::stoi(out.observable_id.substr(2));
            out.zeta = zeta_coefficients(samples, spec, j);
        }
    }
    return result;
}

CorrelationSeries kubo_autocorrelation(const SampleSet& samples, const ChainSpec& spec,
                                       const Observable& obs, const KuboOptions& opt) {
    return kubo_autocorrelation_multi(samples, spec, {&obs, 1}, opt).front();
}

std::vector<double> t6_expansion(const ZetaSet& zeta, std::span<const double> times) {
    std::vector<double> out(times.size());
    for (size_t i = 0; i < times.size(); ++i) {
        const double t2 = times[i] * times[i];
        out[i] = zeta.zeta0.value - zeta.zeta2.value * t2 / 2.0 +
                 zeta.zeta4.value * t2 * t2 / 24.0 - zeta.zeta6.value * t2 * t2 * t2 / 720.0;
    }
    return out;
}

double validity_horizon(double epsilon, const ModeBasis& basis) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("validity_horizon: epsilon must lie in (0,1)");
    // scalar profile g(x) = |cos x - sixth-order Taylor|, monotone growth of
    // the envelope; find the first crossing by march + bisection
    auto g = [](double x) {
        const double x2 = x * x;
        const double taylor = 1.0 - x2 / 2.0 + x2 * x2 / 24.0 - x2 * x2 * x2 / 720.0;
        return std::abs(std::cos(x) - taylor);
    };
    double lo = 0.0, hi = 0.0;
    for (double x = 0.125; x < 64.0; x += 0.125) {
        if (g(x) >= epsilon) {
            hi = x;
            lo = x - 0.125;
            break;
        }
    }
    if (hi == 0.0) throw std::runtime_error("validity_horizon: no crossing found");
    for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) >= epsilon ? hi : lo) = mid;
    }
    const double x_star = 0.5 * (lo + hi);
    double t_eps = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= basis.size(); ++j)
        t_eps = std::min(t_eps, x_star / basis.frequency(j));
    return t_eps;
}

}  // namespace fpu
