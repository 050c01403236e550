#include "alomax/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "alomax/errors.hpp"

namespace alomax {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].  The odd-index
// abscissae (and the center) form the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999235, 0.209482141084727828012999174892,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816,
};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval kronrod15(const std::function<double(double)>& f, double a,
                   double b) {
  const double center = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv_low[7], fv_high[7];
  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    fv_low[j] = f(center - h * kXgk[j]);
    fv_high[j] = f(center + h * kXgk[j]);
    const double pair = fv_low[j] + fv_high[j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv_low[j]) + std::abs(fv_high[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] *
              (std::abs(fv_low[j] - reskh) + std::abs(fv_high[j] - reskh));
  }
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * resabs);
  return {a, b, resk * h, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           std::size_t max_intervals) {
  std::priority_queue<Interval> queue;
  queue.push(kronrod15(f, a, b));
  double total_value = queue.top().value;
  double total_error = queue.top().error;
  std::size_t count = 1;
  while (total_error > std::max(abs_tol, rel_tol * std::abs(total_value)) &&
         count < max_intervals) {
    const Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at roundoff width; cannot refine further.
      queue.push({worst.a, worst.b, worst.value, 0.0});
      total_error -= worst.error;
      continue;
    }
    const Interval left = kronrod15(f, worst.a, mid);
    const Interval right = kronrod15(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++count;
  }
  // Re-sum in a deterministic order for a reproducible, compensated total.
  std::vector<Interval> parts;
  parts.reserve(count + 1);
  while (!queue.empty()) {
    parts.push_back(queue.top());
    queue.pop();
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  double value = 0.0, comp = 0.0, error = 0.0;
  for (const auto& p : parts) {
    const double y = p.value - comp;
    const double t = value + y;
    comp = (t - value) - y;
    value = t;
    error += p.error;
  }
  if (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    throw convergence_error("integrate: interval budget exhausted", value);
  }
  return {value, error, count};
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double scale, double abs_tol,
                                         double rel_tol,
                                         std::size_t max_intervals) {
  if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
  const auto g = [&f, scale](double t) {
    const double om = 1.0 - t;
    const double x = scale * t / om;
    const double v = f(x) * scale / (om * om);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(g, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
}

}  // namespace alomax
