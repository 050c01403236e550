#include "alomax/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "alomax/distribution.hpp"
#include "alomax/errors.hpp"
#include "alomax/special_functions.hpp"

namespace alomax {

namespace {

constexpr std::size_t kStatBlock = 8192;

struct BlockStat {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

BlockStat welford(const double* values, std::size_t len,
                  const std::function<double(double)>& transform) {
  BlockStat s;
  for (std::size_t i = 0; i < len; ++i) {
    const double x = transform(values[i]);
    ++s.n;
    const double delta = x - s.mean;
    s.mean += delta / static_cast<double>(s.n);
    s.m2 += delta * (x - s.mean);
  }
  return s;
}

// Chan's pairwise update, applied strictly in block order so the result is
// independent of which thread produced which block.
BlockStat merge(const BlockStat& a, const BlockStat& b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  BlockStat out;
  out.n = a.n + b.n;
  const double delta = b.mean - a.mean;
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  const double nt = static_cast<double>(out.n);
  out.mean = a.mean + delta * nb / nt;
  out.m2 = a.m2 + b.m2 + delta * delta * na * nb / nt;
  return out;
}

std::function<double(double)> make_transform(Metric metric, const Channel& ch,
                                             const MetricConfig& cfg) {
  switch (metric) {
    case Metric::outage: {
      if (!(cfg.gamma0 > 0.0) || !std::isfinite(cfg.gamma0)) {
        throw domain_error(
            "estimate_metric: outage threshold must be positive");
      }
      const double g0 = cfg.gamma0;
      return [g0](double g) { return g <= g0 ? 1.0 : 0.0; };
    }
    case Metric::ber: {
      if (!cfg.modulation) {
        throw std::invalid_argument(
            "estimate_metric: ber requires a modulation scheme");
      }
      const double phi = cfg.modulation->phi();
      return [phi](double g) {
        return q_function(std::sqrt(2.0 * phi * g));
      };
    }
    case Metric::capacity:
      return [](double g) { return std::log2(1.0 + g); };
    case Metric::bler: {
      if (!cfg.short_packet) {
        throw std::invalid_argument(
            "estimate_metric: bler requires a short-packet config");
      }
      const ShortPacketConfig sp = *cfg.short_packet;
      return [sp](double g) { return bler_linearized(g, sp); };
    }
  }
  throw std::invalid_argument("estimate_metric: unknown metric");
}

}  // namespace

Estimate estimate_metric(Metric metric, const Channel& ch,
                         const MetricConfig& cfg, const McConfig& mc) {
  const auto transform = make_transform(metric, ch, cfg);
  const auto batch = sample_inverse(ch, mc.n_samples, mc.seed,
                                    static_cast<int>(mc.n_streams));
  const std::size_t n = batch.values.size();
  BlockStat total;
  for (std::size_t lo = 0; lo < n; lo += kStatBlock) {
    const std::size_t len = std::min(kStatBlock, n - lo);
    total = merge(total, welford(batch.values.data() + lo, len, transform));
  }
  Estimate e;
  e.mean = total.mean;
  e.n_used = total.n;
  if (total.n > 1) {
    e.std_error = std::sqrt(
        total.m2 / static_cast<double>(total.n - 1) /
        static_cast<double>(total.n));
  }
  e.ci95_low = e.mean - 1.96 * e.std_error;
  e.ci95_high = e.mean + 1.96 * e.std_error;
  return e;
}

KsResult ks_test(const SampleBatch& batch, const Channel& ch) {
  const std::size_t n = batch.values.size();
  if (n == 0) {
    throw std::invalid_argument("ks_test: empty batch");
  }
  std::vector<double> sorted(batch.values);
  std::sort(sorted.begin(), sorted.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = snr_cdf(ch, sorted[i]);
    const double lo = f - static_cast<double>(i) / static_cast<double>(n);
    const double hi =
        static_cast<double>(i + 1) / static_cast<double>(n) - f;
    d = std::max({d, lo, hi});
  }
  KsResult r;
  r.statistic = d;
  r.threshold = 1.63 / std::sqrt(static_cast<double>(n));
  r.pass_at_01 = r.statistic < r.threshold;
  return r;
}

KsResult ks_test_two_sample(const SampleBatch& a, const SampleBatch& b) {
  const std::size_t n = a.values.size();
  const std::size_t m = b.values.size();
  if (n == 0 || m == 0) {
    throw std::invalid_argument("ks_test_two_sample: empty batch");
  }
  std::vector<double> xs(a.values);
  std::vector<double> ys(b.values);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    const double v = (j >= m || (i < n && xs[i] <= ys[j])) ? xs[i] : ys[j];
    while (i < n && xs[i] == v) ++i;
    while (j < m && ys[j] == v) ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(n);
    const double fb = static_cast<double>(j) / static_cast<double>(m);
    d = std::max(d, std::abs(fa - fb));
  }
  KsResult r;
  r.statistic = d;
  r.threshold =
      1.63 * std::sqrt(static_cast<double>(n + m) /
                       (static_cast<double>(n) * static_cast<double>(m)));
  r.pass_at_01 = r.statistic < r.threshold;
  return r;
}

}  // namespace alomax
