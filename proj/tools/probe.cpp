// scratch performance/statistics probe (dev only)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "fpu/sampler.hpp"
#include "fpu/stats.hpp"

using namespace fpu;

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "speed";
    if (mode == "speed") {
        for (int p : {1, 16, 64}) {
            SamplerConfig cfg;
            cfg.chain = ChainSpec::harmonic(8);
            cfg.temperature = 0.25;
            cfg.n_beads = p;
            cfg.dt = 0.0125;
            cfg.seed = 7;
            PimdSampler s(cfg);
            const long steps = p == 64 ? 2000 : 8000;
            const auto t0 = std::chrono::steady_clock::now();
            for (long i = 0; i < steps; ++i) s.step();
            const double el = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            std::printf("P=%2d  %.3f ms/step  (%.1f s for 1e6 steps)\n", p,
                        1e3 * el / steps, 1e6 * el / steps);
        }
    } else if (mode == "drift") {
        for (double dt : {0.05, 0.025, 0.0125, 0.00625}) {
            SamplerConfig cfg;
            cfg.chain = ChainSpec::harmonic(8);
            cfg.temperature = 0.25;
            cfg.n_beads = 64;
            cfg.dt = dt;
            cfg.seed = 7;
            PimdSampler s(cfg);
            const double h0 = s.conserved();
            double drift = 0.0;
            for (long i = 0; i < 20000; ++i) {
                s.step();
                if (i % 20 == 0) {
                    const double h = s.conserved();
                    drift = std::max(drift, std::abs(h - h0) / std::abs(h0));
                }
            }
            std::printf("dt=%.5f  drift=%.3e\n", dt, drift);
        }
    } else if (mode == "tau") {
        // decorrelation of eta_1^2 (bead 1) under different tau_tilde
        for (double tau_scale : {1.0, 0.159, 0.05}) {
            SamplerConfig cfg;
            cfg.chain = ChainSpec::harmonic(8);
            cfg.temperature = 0.25;
            cfg.n_beads = 64;
            cfg.dt = 0.0125;
            cfg.seed = 7;
            cfg.nhc.tau_tilde = tau_scale * 18.1;  // default is 2pi/omega_1 = 18.1
            PimdSampler s(cfg);
            for (long i = 0; i < 4000; ++i) s.step();
            const ModeBasis basis(8);
            const long n = 60000;
            std::vector<double> e1sq(n), e8sq(n), pe(n);
            std::vector<double> eta(8);
            for (long i = 0; i < n; ++i) {
                s.step();
                const auto prim = s.primitive_state();
                basis.to_modes(prim.pos.bead(1), eta);
                e1sq[i] = eta[0] * eta[0];
                e8sq[i] = eta[7] * eta[7];
                pe[i] = s.potential_energy();
            }
            const long t1 = decorrelation_lag(e1sq, std::exp(-1.0), 20000);
            const long t8 = decorrelation_lag(e8sq, std::exp(-1.0), 20000);
            const long tp = decorrelation_lag(pe, std::exp(-1.0), 20000);
            std::printf(
                "tau_tilde=%6.2f: tau_e(eta1^2)=%ld steps, tau_e(eta8^2)=%ld, tau_e(PE)=%ld\n",
                cfg.nhc.tau_tilde, t1, t8, tp);
        }
    }
    return 0;
}
