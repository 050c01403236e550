#include "alomax/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "alomax/errors.hpp"

namespace alomax {

namespace {

constexpr double kBadObjective = 1e300;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string()
                                         : field.substr(b, e - b + 1));
  }
  return out;
}

double parse_number(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("load_empirical: malformed number at line " +
                                std::to_string(line_no));
  }
}

// Normalizes a density vector to unit mass on the grid.  Both arguments of
// the divergence run through this one code path, so bitwise-equal inputs
// stay bitwise equal after normalization.
std::vector<double> normalize_on_grid(const std::vector<double>& densities,
                                      const std::vector<double>& widths) {
  double mass = 0.0;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    mass += densities[i] * widths[i];
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw domain_error("kl_divergence: density mass must be positive");
  }
  std::vector<double> out(densities.size());
  for (std::size_t i = 0; i < densities.size(); ++i) {
    out[i] = densities[i] / mass;
  }
  return out;
}

struct Objective {
  // maps (log alpha, u, log scale) with lambda = 1/alpha + exp(u) to the
  // quantity being minimized; returns a huge value on any failure so the
  // simplex simply walks away from bad regions.
  std::function<double(const std::array<double, 3>&)> eval;
};

struct SimplexOutcome {
  std::array<double, 3> best{};
  double value = kBadObjective;
  std::size_t n_evals = 0;
  bool by_tolerance = false;
};

// Deterministic Nelder-Mead with standard coefficients (reflect 1, expand 2,
// contract 1/2, shrink 1/2).
SimplexOutcome nelder_mead(const Objective& obj, std::array<double, 3> start,
                           double step, std::size_t max_evals, double tol) {
  constexpr int kDim = 3;
  std::array<std::array<double, 3>, 4> pts;
  std::array<double, 4> vals;
  std::size_t evals = 0;
  const auto call = [&](const std::array<double, 3>& y) {
    ++evals;
    const double v = obj.eval(y);
    return std::isfinite(v) ? v : kBadObjective;
  };
  pts[0] = start;
  vals[0] = call(pts[0]);
  for (int i = 0; i < kDim; ++i) {
    pts[i + 1] = start;
    pts[i + 1][static_cast<std::size_t>(i)] += step;
    vals[i + 1] = call(pts[i + 1]);
  }

  SimplexOutcome out;
  const auto order = [&] {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
    std::array<std::array<double, 3>, 4> p2;
    std::array<double, 4> v2;
    for (int k = 0; k < 4; ++k) {
      p2[k] = pts[idx[k]];
      v2[k] = vals[idx[k]];
    }
    pts = p2;
    vals = v2;
  };

  for (;;) {
    order();
    // Termination: function spread or simplex extent within tolerance.
    double spread = 0.0;
    for (int i = 0; i < kDim; ++i) {
      spread = std::max(spread, std::abs(pts[3][static_cast<std::size_t>(i)] -
                                         pts[0][static_cast<std::size_t>(i)]));
    }
    const double f_spread = vals[3] - vals[0];
    if (f_spread <= std::max(1e-12, tol * std::abs(vals[0])) ||
        spread <= tol) {
      out.by_tolerance = true;
      break;
    }
    if (evals + 4 > max_evals) {
      break;
    }

    std::array<double, 3> centroid{};
    for (int k = 0; k < kDim; ++k) {
      for (int i = 0; i < kDim; ++i) {
        centroid[static_cast<std::size_t>(i)] +=
            pts[k][static_cast<std::size_t>(i)] / kDim;
      }
    }
    const auto blend = [&](double t) {
      std::array<double, 3> y{};
      for (int i = 0; i < kDim; ++i) {
        const auto u = static_cast<std::size_t>(i);
        y[u] = centroid[u] + t * (centroid[u] - pts[3][u]);
      }
      return y;
    };

    const auto refl = blend(1.0);
    const double f_refl = call(refl);
    if (f_refl < vals[0]) {
      const auto exp_pt = blend(2.0);
      const double f_exp = call(exp_pt);
      if (f_exp < f_refl) {
        pts[3] = exp_pt;
        vals[3] = f_exp;
      } else {
        pts[3] = refl;
        vals[3] = f_refl;
      }
    } else if (f_refl < vals[2]) {
      pts[3] = refl;
      vals[3] = f_refl;
    } else {
      const bool outside = f_refl < vals[3];
      const auto con = blend(outside ? 0.5 : -0.5);
      const double f_con = call(con);
      if (f_con < (outside ? f_refl : vals[3])) {
        pts[3] = con;
        vals[3] = f_con;
      } else {
        // shrink toward the best vertex
        for (int k = 1; k < 4; ++k) {
          for (int i = 0; i < kDim; ++i) {
            const auto u = static_cast<std::size_t>(i);
            pts[k][u] = pts[0][u] + 0.5 * (pts[k][u] - pts[0][u]);
          }
          vals[k] = call(pts[k]);
        }
        if (evals >= max_evals) break;
      }
    }
  }
  order();
  out.best = pts[0];
  out.value = vals[0];
  out.n_evals = evals;
  return out;
}

std::array<double, 3> encode(double alpha, double lambda, double scale) {
  const double a = std::max(alpha, 1e-3);
  const double excess = std::max(lambda - 1.0 / a, 1e-3);
  const double s = std::max(scale, 1e-12);
  return {std::log(a), std::log(excess), std::log(s)};
}

void decode(const std::array<double, 3>& y, double& alpha, double& lambda,
            double& scale) {
  alpha = std::exp(y[0]);
  lambda = 1.0 / alpha + std::exp(y[1]);
  scale = std::exp(y[2]);
}

FitResult run_fit(const Objective& obj, const FitOptions& options,
                  double probe_scale) {
  std::size_t used = 0;
  std::array<double, 3> start;
  if (options.init) {
    start = encode((*options.init)[0], (*options.init)[1],
                   (*options.init)[2]);
  } else {
    // Coarse probe over representative shapes; strictly-lower wins so ties
    // resolve to the smallest alpha.
    double best_val = kBadObjective * 2.0;
    std::array<double, 3> best_y{};
    for (double a : {0.75, 1.0, 1.5, 2.0, 3.0}) {
      const auto y = encode(a, 1.0 / a + 1.0, probe_scale);
      ++used;
      const double v = obj.eval(y);
      if (std::isfinite(v) && v < best_val) {
        best_val = v;
        best_y = y;
      }
    }
    start = best_y;
  }

  const std::size_t budget =
      options.max_evals > used ? options.max_evals - used : 0;
  auto first = nelder_mead(obj, start, 0.25, budget, options.simplex_tol);
  used += first.n_evals;
  const std::size_t rest =
      options.max_evals > used ? options.max_evals - used : 0;
  auto second =
      nelder_mead(obj, first.best, 0.05, rest, options.simplex_tol);
  used += second.n_evals;
  const auto& final_run = second.value <= first.value ? second : first;

  FitResult r;
  double alpha = 0.0;
  double lambda = 0.0;
  double scale = 0.0;
  decode(final_run.best, alpha, lambda, scale);
  r.alpha = alpha;
  r.lambda = lambda;
  r.scale = scale;
  r.zeta = AlphaLomaxParams(alpha, lambda).zeta();
  r.objective = final_run.value;
  r.n_evals = used;
  r.converged = second.by_tolerance;
  return r;
}

}  // namespace

EmpiricalPdf load_empirical(const std::string& path, std::string* warning) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("load_empirical: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("load_empirical: empty file " + path);
  }
  const auto header = split_fields(line);
  enum class Layout { centers, edges } layout;
  if (header.size() == 2 && header[0] == "bin_center" &&
      header[1] == "density") {
    layout = Layout::centers;
  } else if (header.size() == 3 && header[0] == "bin_edge_low" &&
             header[1] == "bin_edge_high" && header[2] == "count") {
    layout = Layout::edges;
  } else {
    throw std::invalid_argument(
        "load_empirical: unrecognized header; expected bin_center,density "
        "or bin_edge_low,bin_edge_high,count");
  }

  EmpiricalPdf p;
  std::vector<double> counts;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    if (layout == Layout::centers) {
      if (fields.size() != 2) {
        throw std::invalid_argument(
            "load_empirical: expected 2 fields at line " +
            std::to_string(line_no));
      }
      const double c = parse_number(fields[0], line_no);
      const double d = parse_number(fields[1], line_no);
      if (!(d >= 0.0)) {
        throw std::invalid_argument(
            "load_empirical: negative density at line " +
            std::to_string(line_no));
      }
      if (!p.centers.empty() && !(c > p.centers.back())) {
        throw std::invalid_argument(
            "load_empirical: bin centers must be strictly increasing "
            "at line " +
            std::to_string(line_no));
      }
      p.centers.push_back(c);
      p.densities.push_back(d);
    } else {
      if (fields.size() != 3) {
        throw std::invalid_argument(
            "load_empirical: expected 3 fields at line " +
            std::to_string(line_no));
      }
      const double lo = parse_number(fields[0], line_no);
      const double hi = parse_number(fields[1], line_no);
      const double n = parse_number(fields[2], line_no);
      if (!(lo < hi)) {
        throw std::invalid_argument(
            "load_empirical: bin edges must satisfy low < high at line " +
            std::to_string(line_no));
      }
      if (!(n >= 0.0)) {
        throw std::invalid_argument(
            "load_empirical: negative count at line " +
            std::to_string(line_no));
      }
      const double c = 0.5 * (lo + hi);
      if (!p.centers.empty() && !(c > p.centers.back())) {
        throw std::invalid_argument(
            "load_empirical: bins must be ordered by center at line " +
            std::to_string(line_no));
      }
      p.centers.push_back(c);
      p.widths.push_back(hi - lo);
      counts.push_back(n);
    }
  }

  if (p.centers.size() < 2) {
    throw std::invalid_argument(
        "load_empirical: need at least two bins in " + path);
  }

  if (layout == Layout::centers) {
    const std::size_t n = p.centers.size();
    p.widths.resize(n);
    p.widths[0] = p.centers[1] - p.centers[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      p.widths[i] = 0.5 * (p.centers[i + 1] - p.centers[i - 1]);
    }
    p.widths[n - 1] = p.centers[n - 1] - p.centers[n - 2];
  } else {
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    if (!(total > 0.0)) {
      throw std::invalid_argument(
          "load_empirical: total count must be positive in " + path);
    }
    p.densities.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      p.densities[i] = counts[i] / (total * p.widths[i]);
    }
  }

  double mass = 0.0;
  for (std::size_t i = 0; i < p.centers.size(); ++i) {
    mass += p.densities[i] * p.widths[i];
  }
  if (!(mass > 0.0)) {
    throw std::invalid_argument(
        "load_empirical: density mass must be positive in " + path);
  }
  if (warning) {
    warning->clear();
    if (std::abs(mass - 1.0) > 0.02) {
      *warning = "raw density mass " + std::to_string(mass) +
                 " differs from 1 by more than 2%; renormalized";
    }
  }
  for (auto& d : p.densities) d /= mass;
  return p;
}

double kl_divergence(const EmpiricalPdf& p,
                     const std::vector<double>& q_densities) {
  const std::size_t n = p.centers.size();
  if (q_densities.size() != n || p.densities.size() != n ||
      p.widths.size() != n) {
    throw std::invalid_argument("kl_divergence: grid size mismatch");
  }
  for (double q : q_densities) {
    if (q < 0.0 || !std::isfinite(q)) {
      throw domain_error("kl_divergence: model density must be >= 0");
    }
  }
  const auto np = normalize_on_grid(p.densities, p.widths);
  const auto nq = normalize_on_grid(q_densities, p.widths);
  double kl = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (np[i] <= 0.0) continue;  // 0 log 0 = 0
    const double q = std::max(nq[i], 1e-300);
    kl += np[i] * std::log(np[i] / q) * p.widths[i];
  }
  return std::max(kl, 0.0);
}

double resistor_average(double kl_pq, double kl_qp) {
  if (!(kl_pq > 0.0) || !(kl_qp > 0.0)) return 0.0;
  return kl_pq * kl_qp / (kl_pq + kl_qp);
}

FitResult fit_rad(const EmpiricalPdf& data, FitDomain domain,
                  const FitOptions& options) {
  (void)domain;  // snr and envelope share the functional family; the scale
                 // simply takes on the matching meaning.
  const std::size_t n = data.centers.size();
  if (n < 2 || data.densities.size() != n || data.widths.size() != n) {
    throw std::invalid_argument("fit_rad: inconsistent empirical grid");
  }
  double mass = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mass += data.densities[i] * data.widths[i];
    mean += data.centers[i] * data.densities[i] * data.widths[i];
  }
  const double probe_scale = mass > 0.0 ? mean / mass : 1.0;

  Objective obj;
  obj.eval = [&data, n](const std::array<double, 3>& y) {
    double alpha = 0.0;
    double lambda = 0.0;
    double scale = 0.0;
    decode(y, alpha, lambda, scale);
    try {
      const Channel ch(AlphaLomaxParams(alpha, lambda), scale);
      EmpiricalPdf model;
      model.centers = data.centers;
      model.widths = data.widths;
      model.densities.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double d = snr_pdf(ch, data.centers[i]);
        if (!std::isfinite(d)) return kBadObjective;
        model.densities[i] = d;
      }
      const double d_pq = kl_divergence(data, model.densities);
      const double d_qp = kl_divergence(model, data.densities);
      return resistor_average(d_pq, d_qp);
    } catch (const std::exception&) {
      return kBadObjective;
    }
  };
  return run_fit(obj, options, probe_scale);
}

FitResult fit_mle(const std::vector<double>& samples, FitDomain domain,
                  const FitOptions& options) {
  (void)domain;
  if (samples.size() < 100) {
    throw std::invalid_argument("fit_mle: need at least 100 samples");
  }
  for (double v : samples) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(
          "fit_mle: samples must be positive and finite");
    }
  }
  const double n = static_cast<double>(samples.size());
  std::vector<double> logs(samples.size());
  double sum_log = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    logs[i] = std::log(samples[i]);
    sum_log += logs[i];
    sum += samples[i];
  }
  const double probe_scale = sum / n;

  // negative log likelihood; the only per-sample work is the log1p term.
  const auto nll = [&](double alpha, double lambda, double scale) {
    const AlphaLomaxParams params(alpha, lambda);
    const double log_scale = std::log(scale);
    double tail = 0.0;
    for (double lv : logs) {
      const double log_x = params.log_zeta() + alpha * (lv - log_scale);
      tail += log_x > 700.0 ? log_x : std::log1p(std::exp(log_x));
    }
    return -(n * (std::log(alpha * lambda) + params.log_zeta() -
                  alpha * log_scale) +
             (alpha - 1.0) * sum_log - (lambda + 1.0) * tail);
  };

  Objective obj;
  obj.eval = [&nll](const std::array<double, 3>& y) {
    double alpha = 0.0;
    double lambda = 0.0;
    double scale = 0.0;
    decode(y, alpha, lambda, scale);
    try {
      return nll(alpha, lambda, scale);
    } catch (const std::exception&) {
      return kBadObjective;
    }
  };

  FitResult r = run_fit(obj, options, probe_scale);
  const double min_nll = r.objective;
  r.objective = -min_nll;  // report the maximized log likelihood

  // Gradient check in natural parameters; a genuine interior optimum has a
  // vanishing central difference relative to the objective size.
  bool small_gradient = false;
  try {
    const std::array<double, 3> v{r.alpha, r.lambda, r.scale};
    double norm2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      auto lo = v;
      auto hi = v;
      const double h =
          1e-5 * std::max(1.0, std::abs(v[static_cast<std::size_t>(i)]));
      lo[static_cast<std::size_t>(i)] -= h;
      hi[static_cast<std::size_t>(i)] += h;
      const double g =
          (nll(hi[0], hi[1], hi[2]) - nll(lo[0], lo[1], lo[2])) / (2.0 * h);
      norm2 += g * g;
    }
    small_gradient = std::sqrt(norm2) < 1e-4 * std::abs(min_nll);
  } catch (const std::exception&) {
    small_gradient = false;
  }
  r.converged = r.converged && small_gradient;
  return r;
}

}  // namespace alomax
