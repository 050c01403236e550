#pragma once

#include <cstdint>
#include <vector>

#include "alomax/distribution.hpp"

namespace alomax {

enum class SampleMethod { physical, inverse };

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  SampleMethod method = SampleMethod::physical;
};

// Draws SNR samples by simulating the physical model: a Gamma(lambda)
// rate scales two independent Gaussians whose summed squares give the
// conditional-exponential power, raised to 1/alpha and normalized by the
// analytic envelope mean.  Deterministic in (seed, count) and independent
// of n_threads, which only schedules fixed-size blocks across workers.
SampleBatch sample_physical(const Channel& ch, std::size_t count,
                            std::uint64_t seed, unsigned n_threads = 1);

// Draws SNR samples by pushing uniforms through snr_quantile.  Same
// determinism contract as sample_physical.
SampleBatch sample_inverse(const Channel& ch, std::size_t count,
                           std::uint64_t seed, unsigned n_threads = 1);

namespace detail {

// Test hook: the Gamma rate parameter cancels through the normalization,
// so any beta > 0 must reproduce the sample distribution of beta = 1.
SampleBatch sample_physical_with_rate(const Channel& ch, std::size_t count,
                                      std::uint64_t seed, double beta,
                                      unsigned n_threads = 1);

}  // namespace detail

}  // namespace alomax
