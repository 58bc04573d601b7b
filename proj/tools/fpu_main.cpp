// Command-line front end: sample / correlate / oracle / report.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpu/errors.hpp"
#include "fpu/estimators.hpp"
#include "fpu/harmonic_oracle.hpp"
#include "fpu/output.hpp"
#include "fpu/rpmd.hpp"
#include "fpu/run_config.hpp"
#include "fpu/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fpu;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitStrict = 3;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

RunConfig load_with_overrides(const CommonArgs& args) {
    RunConfig cfg = load_run_config(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    if (args.out) cfg.directory = *args.out;
    cfg.validate();
    return cfg;
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

json equipartition_json(const SamplerRunInfo& info, double T) {
    json eq;
    eq["worst_z"] = info.equipartition.worst_z;
    eq["mean"] = info.equipartition.mean;
    eq["se"] = info.equipartition.se;
    eq["temperature"] = T;
    return eq;
}

int cmd_sample(const CommonArgs& args) {
    const RunConfig cfg = load_with_overrides(args);
    ensure_dir(cfg.directory);
    PimdSampler sampler(cfg.sampler_config());
    const SampleSet set = sampler.run();

    const std::string echo = serialize_run_config(cfg);
    write_archive(cfg.directory + "/snapshots.fpusnap", set, echo);
    atomic_write(cfg.directory + "/config.ini", echo);

    json summary;
    summary["n_particles"] = set.n;
    summary["n_beads"] = set.p;
    summary["temperature"] = set.temperature;
    summary["alpha"] = set.alpha;
    summary["beta"] = set.beta;
    summary["seed"] = set.seed;
    summary["n_samples"] = set.n_samples();
    summary["dt"] = set.info.dt;
    summary["stride"] = set.info.stride;
    summary["n_burn"] = set.info.n_burn;
    summary["n_respa"] = set.info.n_respa;
    summary["tau_tilde"] = set.info.tau_tilde;
    summary["total_steps"] = set.info.total_steps;
    summary["max_drift"] = set.info.max_drift;
    summary["whole_run_drift"] = set.info.whole_run_drift;
    summary["six_digit_conservation"] = set.info.max_drift < kDriftTarget;
    summary["equipartition"] = equipartition_json(set.info, set.temperature);
    summary["elapsed_seconds"] = set.info.elapsed_seconds;
    atomic_write(cfg.directory + "/sample_summary.json", summary.dump(2) + "\n");

    std::printf("sample: %ld snapshots (N=%d, P=%d, T=%g, alpha=%g) -> %s\n",
                set.n_samples(), set.n, set.p, set.temperature, set.alpha,
                cfg.directory.c_str());
    std::printf("  dt=%g stride=%ld burn=%ld drift=%.3g equip-worst-z=%.2f\n",
                set.info.dt, set.info.stride, set.info.n_burn, set.info.max_drift,
                set.info.equipartition.worst_z);
    return kExitOk;
}

int cmd_correlate(const CommonArgs& args, const std::string& archive_path) {
    const RunConfig cfg = load_with_overrides(args);
    ensure_dir(cfg.directory);
    const SampleSet set = read_archive(archive_path);
    if (set.n != cfg.n_particles || set.p != cfg.n_beads)
        throw std::invalid_argument("correlate: archive (N=" + std::to_string(set.n) +
                                    ", P=" + std::to_string(set.p) +
                                    ") does not match the config");
    if (set.temperature != cfg.temperature || set.alpha != cfg.alpha)
        throw std::invalid_argument("correlate: archive T/alpha do not match the config");
    if (set.n_samples() == 0) throw std::invalid_argument("correlate: empty archive");
    if (cfg.alpha >= 1.5)
        std::fprintf(stderr,
                     "warning: alpha = %g is outside the weakly anharmonic regime "
                     "(alpha < 3/2); short-time correlators may degrade\n",
                     cfg.alpha);

    const Observable obs = parse_observable(cfg.observable, cfg.n_particles);
    const CorrelationSeries series =
        kubo_autocorrelation(set, cfg.chain_spec(), obs, cfg.kubo_options());

    write_csv(cfg.directory + "/correlation.csv",
              {{"t", series.times}, {"K", series.values}, {"K_stderr", series.stderrs}});

    if (series.zeta) {
        const auto& z = *series.zeta;
        json zj;
        zj["site"] = z.site;
        zj["temperature"] = z.temperature;
        zj["observable"] = series.observable_id;
        zj["n_beads"] = series.p;
        zj["alpha"] = series.alpha;
        auto put = [&](const char* name, const ZetaEstimate& e) {
            zj[name] = {{"value", e.value}, {"stderr", e.se}};
        };
        put("zeta0", z.zeta0);
        put("zeta2", z.zeta2);
        put("zeta4", z.zeta4);
        put("zeta6", z.zeta6);
        atomic_write(cfg.directory + "/zeta.json", zj.dump(2) + "\n");
        const auto t6 = t6_expansion(z, series.times);
        write_csv(cfg.directory + "/t6.csv", {{"t", series.times}, {"T6", t6}});
    }

    std::printf("correlate: %s over %zu times (t_max=%g) -> %s\n",
                series.observable_id.c_str(), series.times.size(), series.times.back(),
                cfg.directory.c_str());
    return kExitOk;
}

int cmd_oracle(const CommonArgs& args) {
    const RunConfig cfg = load_with_overrides(args);
    ensure_dir(cfg.directory);
    const ModeBasis basis(cfg.n_particles);
    const double T = cfg.temperature;

    {
        std::vector<double> j, omega, s2c, s2q, pc, pq;
        for (int m = 1; m <= cfg.n_particles; ++m) {
            j.push_back(m);
            omega.push_back(basis.frequency(m));
            s2c.push_back(mode_variance_classical(basis, m, T));
            s2q.push_back(mode_variance_quantum(basis, m, T));
            pc.push_back(position_variance_classical(basis, m, T));
            pq.push_back(position_variance_quantum(basis, m, T));
        }
        write_csv(cfg.directory + "/oracle_variances.csv",
                  {{"j", j},
                   {"omega", omega},
                   {"mode_var_classical", s2c},
                   {"mode_var_quantum", s2q},
                   {"position_var_classical", pc},
                   {"position_var_quantum", pq}});
    }
    {
        const double t_max = cfg.rpmd_t_max.value_or(validity_horizon(cfg.epsilon, basis));
        std::vector<CsvColumn> cols;
        std::vector<double> ts(cfg.n_times);
        for (int i = 0; i < cfg.n_times; ++i)
            ts[i] = t_max * double(i) / (cfg.n_times - 1);
        cols.push_back({"t", ts});
        for (int m = 1; m <= cfg.n_particles; ++m) {
            std::vector<double> k(ts.size());
            for (size_t i = 0; i < ts.size(); ++i)
                k[i] = rpmd_harmonic_mode(basis, m, T, ts[i]);
            cols.push_back({"K_eta_" + std::to_string(m), k});
        }
        for (int site : cfg.subset) {
            std::vector<double> k(ts.size());
            for (size_t i = 0; i < ts.size(); ++i)
                k[i] = rpmd_harmonic_position(basis, site, T, ts[i]);
            cols.push_back({"K_q_" + std::to_string(site), k});
        }
        write_csv(cfg.directory + "/oracle_kubo.csv", cols);
    }
    {
        std::vector<double> q(cfg.n_q), rho;
        for (int i = 0; i < cfg.n_q; ++i)
            q[i] = -cfg.q_max + 2.0 * cfg.q_max * double(i) / (cfg.n_q - 1);
        rho = wall_distribution(q, T, cfg.chain_spec());
        write_csv(cfg.directory + "/oracle_wall.csv", {{"q", q}, {"rho", rho}});
    }
    if (cfg.alpha > 0.0) {
        std::vector<double> ts(cfg.oracle_n_t), f(cfg.oracle_n_t), z(cfg.oracle_n_t);
        const double lr = std::log(cfg.oracle_t_max / cfg.oracle_t_min);
        for (int i = 0; i < cfg.oracle_n_t; ++i) {
            ts[i] = cfg.oracle_t_min * std::exp(lr * double(i) / (cfg.oracle_n_t - 1));
            f[i] = quartic_site_moment(ts[i], cfg.alpha);
            z[i] = quartic_site_partition(ts[i], cfg.alpha);
        }
        write_csv(cfg.directory + "/oracle_quartic.csv",
                  {{"T", ts}, {"f", f}, {"Z4", z}});
    }
    {
        std::vector<double> j, k, omega;
        for (int m = 1; m <= cfg.n_particles; ++m)
            for (int b = 1; b <= cfg.n_beads; ++b) {
                j.push_back(m);
                k.push_back(b);
                omega.push_back(rp_normal_frequency(basis, m, b, T, cfg.n_beads));
            }
        write_csv(cfg.directory + "/oracle_rp_frequencies.csv",
                  {{"j", j}, {"k", k}, {"Omega", omega}});
    }
    std::printf("oracle: analytic curves written to %s\n", cfg.directory.c_str());
    return kExitOk;
}

struct ArchiveReport {
    std::string path;
    SampleSet set;
    std::vector<MeanSe> mode_var;  // bead-averaged <eta_j^2>
    bool harmonic_ok = true;
    bool mirror_ok = true;
    double equip_worst_z = 0.0;
};

ArchiveReport analyze_archive(const std::string& path) {
    ArchiveReport rep;
    rep.path = path;
    rep.set = read_archive(path);
    const SampleSet& set = rep.set;
    if (set.n_samples() == 0) throw std::invalid_argument("report: empty archive " + path);
    const ModeBasis basis(set.n);
    std::vector<double> eta(set.n);
    rep.mode_var.resize(set.n);
    for (int j = 1; j <= set.n; ++j) {
        std::vector<double> per_snap(set.n_samples());
        for (long s = 0; s < set.n_samples(); ++s) {
            double acc = 0.0;
            for (int k = 1; k <= set.p; ++k) {
                basis.to_modes(set.bead(s, k), eta);
                acc += eta[j - 1] * eta[j - 1];
            }
            per_snap[s] = acc / set.p;
        }
        rep.mode_var[j - 1] = mean_with_se(per_snap, 32);
    }
    if (set.alpha == 0.0) {
        for (int j = 1; j <= set.n; ++j) {
            const double oracle = (set.p == 1)
                                      ? mode_variance_classical(basis, j, set.temperature)
                                      : mode_variance_quantum(basis, j, set.temperature);
            const auto& m = rep.mode_var[j - 1];
            const double tol = std::max(0.05 * oracle, 4.0 * m.se);
            if (std::abs(m.value - oracle) > tol) rep.harmonic_ok = false;
        }
    }
    for (int j = 1; j <= (set.n + 1) / 2; ++j)
        if (!mirror_symmetry_ks(rep.set, j).pass) rep.mirror_ok = false;
    rep.equip_worst_z = set.info.equipartition.worst_z;
    return rep;
}

int cmd_report(const std::string& dir, bool strict) {
    std::vector<std::string> archives;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".fpusnap") archives.push_back(e.path().string());
    std::sort(archives.begin(), archives.end());
    if (archives.empty()) {
        std::fprintf(stderr, "report: no .fpusnap archives under %s\n", dir.c_str());
        return kExitValidation;
    }
    bool all_ok = true;
    for (const auto& path : archives) {
        const auto rep = analyze_archive(path);
        const auto& set = rep.set;
        std::printf("== %s\n", path.c_str());
        std::printf("   N=%d P=%d T=%g alpha=%g samples=%ld dt=%g drift=%.3g\n", set.n,
                    set.p, set.temperature, set.alpha, set.n_samples(), set.info.dt,
                    set.info.max_drift);
        const ModeBasis basis(set.n);
        std::printf("   mode   <eta_j^2>           classical    quantum      pull\n");
        for (int j = 1; j <= set.n; ++j) {
            const auto& m = rep.mode_var[j - 1];
            const double cl = mode_variance_classical(basis, j, set.temperature);
            const double qu = mode_variance_quantum(basis, j, set.temperature);
            const double oracle = (set.p == 1) ? cl : qu;
            const double pull = (m.se > 0) ? (m.value - oracle) / m.se : 0.0;
            std::printf("   %4d   %9.5f +- %-8.5f %-12.5f %-12.5f %+5.2f\n", j, m.value,
                        m.se, cl, qu, pull);
        }
        std::printf("   checks: harmonic-oracle=%s mirror-KS=%s equip-worst-z=%.2f\n",
                    set.alpha == 0.0 ? (rep.harmonic_ok ? "pass" : "FAIL") : "n/a",
                    rep.mirror_ok ? "pass" : "FAIL", rep.equip_worst_z);
        if (set.alpha == 0.0 && !rep.harmonic_ok) all_ok = false;
        if (!rep.mirror_ok) all_ok = false;
        if (rep.equip_worst_z > 4.5) all_ok = false;
    }

    // classical vs quantum ordering for matching (T, alpha) pairs
    std::map<std::pair<double, double>, std::vector<const ArchiveReport*>> groups;
    std::vector<ArchiveReport> reps;
    reps.reserve(archives.size());
    for (const auto& path : archives) reps.push_back(analyze_archive(path));
    for (const auto& r : reps)
        groups[{r.set.temperature, r.set.alpha}].push_back(&r);
    for (const auto& [key, group] : groups) {
        const ArchiveReport* classical = nullptr;
        const ArchiveReport* quantum = nullptr;
        for (const auto* r : group) {
            if (r->set.p == 1 && !classical) classical = r;
            if (r->set.p > 1 && (!quantum || r->set.p > quantum->set.p)) quantum = r;
        }
        if (classical && quantum) {
            const auto& c = classical->mode_var.front();
            const auto& q = quantum->mode_var.front();
            std::printf(
                "== T=%g alpha=%g: softest-mode variance classical %.5f vs quantum (P=%d) "
                "%.5f (separation %.1f se)\n",
                key.first, key.second, c.value, quantum->set.p, q.value,
                (q.value - c.value) / std::hypot(c.se, q.se));
        }
    }

    if (fs::exists(dir + "/zeta.json")) {
        std::ifstream in(dir + "/zeta.json");
        json z = json::parse(in);
        std::printf("== zeta (site %d, P=%d): zeta0=%.5g zeta2=%.5g zeta4=%.5g zeta6=%.5g\n",
                    z.at("site").get<int>(), z.at("n_beads").get<int>(),
                    z.at("zeta0").at("value").get<double>(),
                    z.at("zeta2").at("value").get<double>(),
                    z.at("zeta4").at("value").get<double>(),
                    z.at("zeta6").at("value").get<double>());
    }

    if (strict && !all_ok) {
        std::fprintf(stderr, "report: strict checks failed\n");
        return kExitStrict;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical and quantum Fermi-Pasta-Ulam chain toolkit"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string archive_path, report_dir;
    bool strict = false;

    auto add_common = [&](CLI::App* sub, bool needs_config = true) {
        if (needs_config)
            sub->add_option("--config", common.config_path, "run configuration file")
                ->required();
        sub->add_option("--seed", common.seed, "override the RNG seed");
        sub->add_option("--out", common.out, "override the output directory");
    };

    auto* sample = app.add_subcommand("sample", "thermostatted PIMD sampling run");
    add_common(sample);
    auto* correlate =
        app.add_subcommand("correlate", "Kubo correlator from a snapshot archive");
    add_common(correlate);
    correlate->add_option("--archive", archive_path, "snapshot archive")->required();
    auto* oracle = app.add_subcommand("oracle", "analytic harmonic/quartic curves");
    add_common(oracle);
    auto* report = app.add_subcommand("report", "comparison tables for a run directory");
    report->add_option("--dir", report_dir, "run directory")->required();
    report->add_flag("--strict", strict, "exit 3 when applicable checks fail");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(common);
        if (correlate->parsed()) return cmd_correlate(common, archive_path);
        if (oracle->parsed()) return cmd_oracle(common);
        if (report->parsed()) return cmd_report(report_dir, strict);
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical abort: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return kExitOk;
}
