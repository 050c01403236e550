#pragma once

#include <cstddef>
#include <functional>

namespace alomax {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
};

// Adaptive Gauss-Kronrod 7-15 integration of f over the finite interval
// [a, b].  Splits the worst interval until the summed Kronrod error
// estimate meets max(abs_tol, rel_tol * |integral|).  Throws
// convergence_error (carrying the best estimate) if max_intervals
// subdivisions are not enough.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-10,
                           double rel_tol = 1e-9,
                           std::size_t max_intervals = 4000);

// Integral of f over [0, inf) via the substitution x = scale * t / (1 - t).
// scale should be near the scale of the integrand's mass to keep the
// transformed integrand well behaved.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double scale, double abs_tol = 1e-10,
                                         double rel_tol = 1e-9,
                                         std::size_t max_intervals = 4000);

}  // namespace alomax
