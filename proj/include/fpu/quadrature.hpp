#pragma once

#include <functional>

namespace fpu {

// Adaptive Simpson quadrature on [a, b] with absolute+relative tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

// Expands symmetrically from the peak until the integrand is negligible, then
// integrates.  Intended for fast-decaying Boltzmann-type weights.
double integrate_decaying(const std::function<double(double)>& f, double center,
                          double initial_halfwidth, double tol = 1e-10);

}  // namespace fpu
