#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "alomax/distribution.hpp"

namespace alomax {

// Binned empirical density: centers[i] carries density densities[i] over a
// bin of width widths[i].
struct EmpiricalPdf {
  std::vector<double> centers;
  std::vector<double> densities;
  std::vector<double> widths;
};

// Whether empirical data lives in the SNR domain (fit the SNR density with
// scale = mean SNR) or the envelope domain (fit the normalized envelope
// density with scale = envelope mean).
enum class FitDomain { snr, envelope };

// Parses "bin_center,density" or "bin_edge_low,bin_edge_high,count" CSV
// (header required).  Counts become densities; either way the result is
// renormalized to unit mass and a warning string is produced when the raw
// mass misses 1 by more than 2%.  Malformed rows throw invalid_argument
// naming the line number.
EmpiricalPdf load_empirical(const std::string& path,
                            std::string* warning = nullptr);

// KL divergence sum p_i ln(p_i / q_i) w_i of the empirical density against
// a model density evaluated on the same grid.  Both sides are normalized
// on the grid first, so identical shapes give exactly zero.  A negative
// model density throws domain_error.
double kl_divergence(const EmpiricalPdf& p,
                     const std::vector<double>& q_densities);

// Symmetrized resistor-average divergence D1 D2 / (D1 + D2); zero if
// either direction is zero.
double resistor_average(double kl_pq, double kl_qp);

struct FitResult {
  double alpha = 0.0;
  double lambda = 0.0;
  double zeta = 0.0;
  double scale = 0.0;  // mean SNR (snr domain) or envelope mean
  double objective = 0.0;
  std::size_t n_evals = 0;
  bool converged = false;
};

struct FitOptions {
  // Optional (alpha, lambda, scale) starting point; otherwise a coarse
  // grid probe picks one.
  std::optional<std::array<double, 3>> init;
  std::size_t max_evals = 5000;
  double simplex_tol = 1e-8;
};

// Minimizes the resistor-average divergence between the empirical density
// and the model over (alpha, lambda, scale), Nelder-Mead in a
// reparameterized unconstrained space.  Deterministic given data and
// options.
FitResult fit_rad(const EmpiricalPdf& data, FitDomain domain,
                  const FitOptions& options = {});

// Maximum likelihood over raw samples (at least 100, all positive, else
// invalid_argument).  Same optimizer; converged additionally requires a
// small central-difference gradient at the optimum.
FitResult fit_mle(const std::vector<double>& samples, FitDomain domain,
                  const FitOptions& options = {});

}  // namespace alomax
