#include "alomax/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "alomax/errors.hpp"

namespace alomax {

namespace {

// log(sin(pi z)) stable for large |Im z|, where complex sin overflows.
// The branch may jump by 2 pi along a contour (harmless, every consumer
// exponentiates) but is conjugate-symmetric by construction so symmetric
// contours produce conjugate-symmetric integrands.
std::complex<double> log_sin_pi(std::complex<double> z) {
  const double pi = std::numbers::pi;
  if (z.imag() < 0.0) {
    return std::conj(log_sin_pi(std::conj(z)));
  }
  if (z.imag() < 20.0) {
    return std::log(std::sin(pi * z));
  }
  const std::complex<double> ipz{-pi * z.imag(), pi * z.real()};  // i pi z
  const std::complex<double> log_2i{std::numbers::ln2, 0.5 * pi};
  // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
  return -ipz + std::log(std::exp(2.0 * ipz) - 1.0) - log_2i;
}

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczos[] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

std::complex<double> log_gamma_positive(std::complex<double> z) {
  // Valid for Re z >= 0.5.
  std::complex<double> acc = kLanczos[0];
  for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (z - 1.0 + double(k));
  const std::complex<double> t = z + 6.5;
  return 0.91893853320467274178 + (z - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      z.real() == std::floor(z.real())) {
    throw domain_error("log_gamma: pole at non-positive integer " +
                       std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    return std::log(std::numbers::pi) - log_sin_pi(z) -
           log_gamma_positive(1.0 - z);
  }
  return log_gamma_positive(z);
}

double q_function(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw domain_error("digamma: requires x > 0, got " + std::to_string(x));
  }
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series; coefficients are B_{2n}/(2n).  At x >= 10 the
  // truncation error is below 1e-16.
  const double w = 1.0 / (x * x);
  double series = 0.0;
  static const double coeff[] = {
      1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
      1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
  };
  double p = w;
  for (double c : coeff) {
    series += c * p;
    p *= w;
  }
  return acc + std::log(x) - 0.5 / x - series;
}

namespace {

// Direct Gauss series; assumes it is called in a convergent regime
// (|z| < 1, or a terminating numerator parameter).
double hyp2f1_series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  int small_streak = 0;
  const std::size_t cap = 1'000'000;
  for (std::size_t k = 0; k < cap; ++k) {
    const double dk = static_cast<double>(k);
    term *= (a + dk) * (b + dk) / ((c + dk) * (1.0 + dk)) * z;
    if (term == 0.0) return sum;  // terminating polynomial case
    sum += term;
    small_streak = (std::abs(term) <= 1e-13 * std::abs(sum)) ? small_streak + 1 : 0;
    if (small_streak >= 2 && k > 2) return sum;
    if (!std::isfinite(sum)) break;
  }
  throw convergence_error("hyp2f1: series did not reach tolerance", sum);
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
  if (c <= 0.0 && c == std::floor(c)) {
    throw domain_error("hyp2f1: c is a non-positive integer");
  }
  if (z >= 1.0) {
    throw domain_error("hyp2f1: defined here only for z < 1");
  }
  if (z == 0.0) return 1.0;
  if (z < -0.5) {
    // Pfaff transformation w = z/(z-1) maps z < -0.5 into (1/3, 1).  Put
    // the larger numerator parameter into the transformed c-a slot so the
    // remaining series has the smaller tail exponent.
    const double w = z / (z - 1.0);
    if (a >= b) return std::pow(1.0 - z, -b) * hyp2f1_series(c - a, b, c, w);
    return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w);
  }
  return hyp2f1_series(a, b, c, z);
}

}  // namespace alomax
