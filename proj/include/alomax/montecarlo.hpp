#pragma once

#include <cstdint>

#include "alomax/metrics.hpp"
#include "alomax/sampling.hpp"

namespace alomax {

struct McConfig {
  std::uint64_t seed = 1;
  std::size_t n_samples = 100'000;
  unsigned n_streams = 1;  // worker threads; never changes the result
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::size_t n_used = 0;
};

// Sample-mean estimate of a metric over inverse-CDF draws.  Per-sample
// transforms: outage uses the indicator gamma <= gamma0, BER the
// conditional error rate Q(sqrt(2 phi gamma)), capacity log2(1 + gamma),
// BLER the linearized block error curve.  Bit-identical for fixed
// (seed, n_samples) regardless of n_streams.
Estimate estimate_metric(Metric metric, const Channel& ch,
                         const MetricConfig& cfg, const McConfig& mc);

struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass_at_01 = false;
};

// One-sample Kolmogorov-Smirnov distance of a batch against the analytic
// SNR CDF; pass threshold 1.63/sqrt(n) (significance 0.01).
KsResult ks_test(const SampleBatch& batch, const Channel& ch);

// Two-sample Kolmogorov-Smirnov distance between batches; pass threshold
// 1.63 sqrt((n + m) / (n m)).
KsResult ks_test_two_sample(const SampleBatch& a, const SampleBatch& b);

}  // namespace alomax
