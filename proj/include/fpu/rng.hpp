#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fpu {

// Deterministic random source.  std::mt19937_64 has a pinned algorithm, and
// the uniform/gaussian transforms below are spelled out by hand so that a
// given seed reproduces the same stream on every build of this project
// (std::*_distribution is implementation-defined and would break that).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform on [0, 1)
    double u01() { return double(eng_() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1], safe as a log argument
    double u01_open() { return double((eng_() >> 11) + 1) * 0x1.0p-53; }

    // standard normal, Marsaglia polar method
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * u01() - 1.0;
            v = 2.0 * u01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    double gauss(double mean, double sigma) { return mean + sigma * gauss(); }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// splitmix64 finalizer, used to derive well-separated substream seeds
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix_seed(seed, stream));
}

}  // namespace fpu
