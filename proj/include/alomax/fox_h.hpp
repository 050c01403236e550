#pragma once

#include <cstddef>
#include <vector>

namespace alomax {

// One Gamma factor of a Mellin-Barnes integrand, Gamma(coeff + scale * s)
// up to the reflections implied by its position.  scale >= 0.
struct GammaTerm {
  double coeff = 0.0;
  double scale = 1.0;
};

// Parameters of the H function
//
//   H[z] = (1 / 2 pi i) Int  prod_{j<=m} Gamma(b_j + B_j s)
//                            prod_{j<=n} Gamma(1 - a_j - A_j s)
//                          / prod_{j>m}  Gamma(1 - b_j - B_j s)
//                          / prod_{j>n}  Gamma(a_j + A_j s)  z^{-s} ds
//
// with upper holding the (a_j, A_j) pairs and lower the (b_j, B_j) pairs.
// The contour is a vertical line separating the poles of the first product
// (left of it) from the poles of the second (right of it).
struct FoxHParams {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<GammaTerm> upper;
  std::vector<GammaTerm> lower;

  // Pole-free strip for the contour real part; left comes from the
  // first m lower pairs, right from the first n upper pairs.  Pairs with
  // scale == 0 are constants and do not constrain the strip.
  double strip_left() const;
  double strip_right() const;

  // Sum of scales weighted by position sign; must be positive for the
  // integrand to decay exponentially along the contour.
  double decay_exponent() const;
};

struct ContourConfig {
  double rel_tolerance = 1e-10;
  // Half-length of the truncated contour is grown geometrically up to
  // this bound before step refinement begins.
  double max_truncation = 400.0;
  std::size_t max_nodes = 2'000'000;
};

struct FoxHResult {
  double value = 0.0;
  double error_estimate = 0.0;
  // Magnitude of the imaginary part left after integrating both contour
  // halves; a diagnostic, near zero for real-valued H functions.
  double imag_residual = 0.0;
  std::size_t nodes = 0;
};

// Numerical evaluation of the H function by trapezoidal quadrature along
// the vertical contour through the middle of the pole-free strip, in log
// space for overflow safety.  Throws domain_error for an empty strip,
// non-positive decay exponent, or z <= 0; throws convergence_error
// (carrying the estimate) if the node budget is exhausted first.
FoxHResult fox_h(const FoxHParams& params, double z,
                 const ContourConfig& config = {});

}  // namespace alomax
