#include "alomax/fox_h.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "alomax/errors.hpp"
#include "alomax/special_functions.hpp"

namespace alomax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log of the full gamma-ratio integrand at s = c + i t, minus the z power:
// sum of numerator log-gammas, minus denominator log-gammas, minus s ln z.
class LogIntegrand {
public:
  LogIntegrand(const FoxHParams& p, double log_z) : p_(&p), log_z_(log_z) {}

  std::complex<double> operator()(std::complex<double> s) const {
    std::complex<double> acc = -s * log_z_;
    const auto& up = p_->upper;
    const auto& lo = p_->lower;
    for (std::size_t j = 0; j < lo.size(); ++j) {
      const std::complex<double> arg = lo[j].coeff + lo[j].scale * s;
      if (j < p_->m) {
        acc += log_gamma(arg);
      } else {
        acc -= log_gamma(1.0 - arg);
      }
    }
    for (std::size_t j = 0; j < up.size(); ++j) {
      const std::complex<double> arg = up[j].coeff + up[j].scale * s;
      if (j < p_->n) {
        acc += log_gamma(1.0 - arg);
      } else {
        acc -= log_gamma(arg);
      }
    }
    return acc;
  }

private:
  const FoxHParams* p_;
  double log_z_;
};

// Running peak-shifted complex accumulator: tracks sum of exp(logf - peak)
// and rescales when a larger peak appears, so magnitudes spanning hundreds
// of orders never overflow.
struct ShiftedSum {
  std::complex<double> sum{0.0, 0.0};
  double abs_sum = 0.0;  // sum of |exp(logf - peak)| for the roundoff floor
  double peak = -kInf;

  void add(std::complex<double> logf) {
    const double mag = logf.real();
    if (!std::isfinite(mag)) return;  // exp underflow far in the tails
    if (mag > peak) {
      const double rescale = std::exp(peak - mag);
      sum *= rescale;
      abs_sum *= rescale;
      peak = mag;
    }
    const std::complex<double> v =
        std::exp(std::complex<double>(mag - peak, logf.imag()));
    sum += v;
    abs_sum += std::abs(v);
  }
};

}  // namespace

double FoxHParams::strip_left() const {
  double left = -kInf;
  for (std::size_t j = 0; j < m && j < lower.size(); ++j) {
    if (lower[j].scale > 0.0) {
      left = std::max(left, -lower[j].coeff / lower[j].scale);
    }
  }
  return left;
}

double FoxHParams::strip_right() const {
  double right = kInf;
  for (std::size_t j = 0; j < n && j < upper.size(); ++j) {
    if (upper[j].scale > 0.0) {
      right = std::min(right, (1.0 - upper[j].coeff) / upper[j].scale);
    }
  }
  return right;
}

double FoxHParams::decay_exponent() const {
  double acc = 0.0;
  for (std::size_t j = 0; j < upper.size(); ++j) {
    acc += (j < n) ? upper[j].scale : -upper[j].scale;
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    acc += (j < m) ? lower[j].scale : -lower[j].scale;
  }
  return acc;
}

FoxHResult fox_h(const FoxHParams& params, double z,
                 const ContourConfig& config) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw domain_error("fox_h: argument must be positive and finite");
  }
  if (params.m > params.lower.size() || params.n > params.upper.size()) {
    throw domain_error("fox_h: m/n exceed the parameter counts");
  }
  const double left = params.strip_left();
  const double right = params.strip_right();
  if (!(left < right)) {
    throw domain_error("fox_h: empty contour strip");
  }
  if (!(params.decay_exponent() > 0.0)) {
    throw domain_error("fox_h: integrand does not decay on the contour");
  }

  double c;
  if (std::isfinite(left) && std::isfinite(right)) {
    c = 0.5 * (left + right);
  } else if (std::isfinite(left)) {
    c = left + 1.0;
  } else if (std::isfinite(right)) {
    c = right - 1.0;
  } else {
    c = 0.0;
  }

  const LogIntegrand logf(params, std::log(z));
  const auto at = [&](double t) {
    return logf(std::complex<double>(c, t));
  };

  std::size_t nodes = 0;
  const double log_center = at(0.0).real();
  ++nodes;

  // Grow the truncation half-length until the integrand magnitude at the
  // endpoint (checked at 0.75 T too, in case of non-monotone decay) sits
  // far below the tolerance relative to the peak seen so far.
  double peak = log_center;
  double t_max = 8.0;
  const double log_cut = std::log(0.01 * config.rel_tolerance);
  for (;;) {
    const double end1 = at(t_max).real();
    const double end2 = at(0.75 * t_max).real();
    nodes += 2;
    peak = std::max({peak, end1, end2});
    const double margin = std::log(std::max(t_max, 1.0));
    if (end1 - peak + margin <= log_cut && end2 - peak + margin <= log_cut) {
      break;
    }
    t_max *= 1.5;
    if (t_max > config.max_truncation) {
      t_max = config.max_truncation;
      nodes += 2;
      const double e1 = at(t_max).real();
      if (e1 - peak + std::log(std::max(t_max, 1.0)) > log_cut) {
        throw convergence_error(
            "fox_h: integrand tail still large at the truncation bound",
            0.0);
      }
      break;
    }
  }

  // Symmetric trapezoid on [-T, T] with interval halving; each refinement
  // reuses previous nodes through the running shifted accumulator.
  std::size_t segments = 64;
  double h = 2.0 * t_max / static_cast<double>(segments);
  ShiftedSum acc;
  acc.add(at(-t_max) + std::complex<double>(std::log(0.5), 0.0));
  acc.add(at(t_max) + std::complex<double>(std::log(0.5), 0.0));
  for (std::size_t k = 1; k < segments; ++k) {
    acc.add(at(-t_max + static_cast<double>(k) * h));
  }
  nodes += segments + 1;

  const double eps = std::numeric_limits<double>::epsilon();
  const double two_pi = 2.0 * std::numbers::pi;
  std::complex<double> prev{kInf, 0.0};
  double error_estimate = kInf;
  int refinements = 0;
  for (;;) {
    const std::complex<double> integral =
        acc.sum * (h / two_pi) * std::exp(acc.peak);
    if (refinements >= 2) {
      const double diff = std::abs(integral - prev);
      const double floor =
          100.0 * eps * acc.abs_sum * (h / two_pi) * std::exp(acc.peak);
      error_estimate = diff;
      if (diff <= std::max(config.rel_tolerance * std::abs(integral), floor)) {
        FoxHResult r;
        r.value = integral.real();
        r.error_estimate = error_estimate;
        r.imag_residual = std::abs(integral.imag());
        r.nodes = nodes;
        return r;
      }
    }
    if (nodes + segments > config.max_nodes) {
      throw convergence_error("fox_h: node budget exhausted",
                              integral.real());
    }
    // Add midpoints of every current segment.
    for (std::size_t k = 0; k < segments; ++k) {
      acc.add(at(-t_max + (static_cast<double>(k) + 0.5) * h));
    }
    nodes += segments;
    segments *= 2;
    h *= 0.5;
    prev = integral;
    ++refinements;
  }
}

}  // namespace alomax
