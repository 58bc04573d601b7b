#pragma once

#include <cstdint>
#include <cstring>

namespace fpu {

// exp over a contiguous array, |error| < 2 ulp for |x| <= 700.
// Written with plain arithmetic and bit manipulation only (no libm call in
// the loop body) so the compiler can vectorize it; the Nose-Hoover kernel
// spends most of its time here.  The rounded exponent k is pulled from the
// low mantissa bits of the shift trick rather than a double->int64 cast,
// which AVX2 cannot vectorize.
inline void vec_exp(const double* __restrict x, double* __restrict y, int n) {
    constexpr double LOG2E = 1.4426950408889634074;
    constexpr double LN2_HI = 6.93147180369123816490e-01;
    constexpr double LN2_LO = 1.90821492927058770002e-10;
    constexpr double SHIFT = 6755399441055744.0;  // 2^52 + 2^51
#if defined(_OPENMP)
#pragma omp simd
#endif
    for (int i = 0; i < n; ++i) {
        double v = x[i];
        v = v < -700.0 ? -700.0 : (v > 700.0 ? 700.0 : v);
        const double t = v * LOG2E + SHIFT;
        const double kd = t - SHIFT;  // nearest integer as a double
        std::int64_t tb;
        std::memcpy(&tb, &t, 8);
        const double r = (v - kd * LN2_HI) - kd * LN2_LO;
        // exp(r) on |r| <= ln2/2, Taylor to r^13 (next term < 1 ulp),
        // Estrin grouping to keep the fma chain shallow
        const double r2 = r * r;
        const double r4 = r2 * r2;
        const double r8 = r4 * r4;
        const double a = 1.0 + r;
        const double b = (1.0 / 2.0) + r * (1.0 / 6.0);
        const double c = (1.0 / 24.0) + r * (1.0 / 120.0);
        const double d = (1.0 / 720.0) + r * (1.0 / 5040.0);
        const double e = (1.0 / 40320.0) + r * (1.0 / 362880.0);
        const double f = (1.0 / 3628800.0) + r * (1.0 / 39916800.0);
        const double g = (1.0 / 479001600.0) + r * (1.0 / 6227020800.0);
        const double p = (a + r2 * b) + r4 * (c + r2 * d) + r8 * ((e + r2 * f) + r4 * g);
        // scale by 2^k: k sits in the low mantissa bits of t
        const std::int64_t k = std::int64_t(std::int32_t(std::uint32_t(tb)));
        const std::int64_t bits = (k + 1023) << 52;
        double s;
        std::memcpy(&s, &bits, 8);
        y[i] = p * s;
    }
}

}  // namespace fpu
