#include "fpu/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fpu {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0) return left + right + delta / 15.0;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        return -integrate(f, b, a, tol);
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    // seed with a modest split so narrow peaks inside [a,b] are not missed
    const int presplit = 16;
    double total = 0.0;
    double x0 = a, f0 = fa;
    for (int i = 1; i <= presplit; ++i) {
        const double x1 = a + (b - a) * double(i) / presplit;
        const double f1 = f(x1);
        const double xm = 0.5 * (x0 + x1);
        const double fxm = f(xm);
        const double w = simpson(f0, fxm, f1, x1 - x0);
        total += adapt(f, x0, x1, f0, fxm, f1, w,
                       tol * std::max(1.0, std::abs(whole)) / presplit, 48);
        x0 = x1;
        f0 = f1;
    }
    return total;
}

double integrate_decaying(const std::function<double(double)>& f, double center,
                          double initial_halfwidth, double tol) {
    if (initial_halfwidth <= 0.0)
        throw std::invalid_argument("integrate_decaying: halfwidth must be positive");
    const double peak = std::abs(f(center));
    double h = initial_halfwidth;
    const double cutoff = std::max(peak, 1e-300) * 1e-18;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(f(center - h)) < cutoff && std::abs(f(center + h)) < cutoff) break;
        h *= 1.5;
    }
    return integrate(f, center - h, center + h, tol);
}

}  // namespace fpu
