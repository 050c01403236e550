#pragma once

#include <complex>

namespace alomax {

// log Gamma(z) for complex z, principal branch.  Lanczos approximation for
// Re z >= 0.5, reflection formula otherwise.  Accurate to ~1e-13 relative
// away from the poles.  Poles (z = 0, -1, -2, ...) throw domain_error.
std::complex<double> log_gamma(std::complex<double> z);

// Gaussian tail probability Q(x) = P(N(0,1) > x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

// Digamma (psi) function for x > 0; throws domain_error otherwise.
// Recurrence up to x >= 10, then the asymptotic Bernoulli series.
double digamma(double x);

// Gauss hypergeometric 2F1(a, b; c; z) for real parameters and z < 1.
// Direct series on |z| <= 0.5 and on (0.5, 1); Pfaff transformation for
// z < -0.5.  z >= 1 or c a non-positive integer throws domain_error;
// a series that fails to reach tolerance throws convergence_error with
// the achieved estimate.
double hyp2f1(double a, double b, double c, double z);

}  // namespace alomax
