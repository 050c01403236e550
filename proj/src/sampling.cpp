#include "alomax/sampling.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "alomax/distribution.hpp"

namespace alomax {

namespace {

constexpr std::size_t kBlockSize = 8192;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// xoshiro256++ seeded from a splitmix64 chain; one independent instance per
// sample block so any thread can produce any block bit-identically.
class Xoshiro {
public:
  Xoshiro(std::uint64_t seed, std::uint64_t block) {
    std::uint64_t x = splitmix64(seed) + block;
    for (auto& w : s_) {
      x = splitmix64(x);
      w = x;
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // in [0, 1)
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }
  // in (0, 1)
  double uniform_open() {
    return ((next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double theta = 2.0 * std::numbers::pi * uniform01();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Marsaglia-Tsang; shapes below one use the boost G(k) = G(k+1) U^(1/k).
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform_open();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
        return d * v;
      }
    }
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

template <typename BlockFill>
std::vector<double> run_blocks(std::size_t count, unsigned n_threads,
                               BlockFill fill) {
  if (count == 0) {
    throw std::invalid_argument("sampling: count must be positive");
  }
  std::vector<double> values(count);
  const std::size_t n_blocks = (count + kBlockSize - 1) / kBlockSize;
  const auto worker = [&](std::atomic<std::size_t>& next) {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      const std::size_t lo = b * kBlockSize;
      const std::size_t hi = std::min(lo + kBlockSize, count);
      fill(b, values.data() + lo, hi - lo);
    }
  };
  std::atomic<std::size_t> next{0};
  const unsigned workers = n_threads > 1 ? n_threads : 1;
  if (workers == 1) {
    worker(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (unsigned i = 0; i < workers; ++i) {
      pool.emplace_back([&] { worker(next); });
    }
    for (auto& t : pool) t.join();
  }
  return values;
}

}  // namespace

namespace detail {

SampleBatch sample_physical_with_rate(const Channel& ch, std::size_t count,
                                      std::uint64_t seed, double beta,
                                      unsigned n_threads) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("sampling: rate must be positive");
  }
  const double alpha = ch.alpha();
  const double lambda = ch.lambda();
  // E[P^(1/alpha)] = beta^(1/alpha) exp(log_zeta / alpha); dividing it out
  // makes the draw scale-free before multiplying by the mean SNR.
  const double log_mean_envelope =
      (std::log(beta) + ch.params().log_zeta()) / alpha;
  const double scale = ch.mean_snr() * std::exp(-log_mean_envelope);
  auto values = run_blocks(count, n_threads, [&](std::size_t block,
                                                 double* out,
                                                 std::size_t len) {
    Xoshiro rng(splitmix64(seed), block + 1);
    for (std::size_t i = 0; i < len; ++i) {
      const double tau = rng.gamma(lambda) / beta;
      const double sd = std::sqrt(0.5 / tau);
      const double x = sd * rng.normal();
      const double y = sd * rng.normal();
      const double power = x * x + y * y;
      out[i] = scale * std::pow(power, 1.0 / alpha);
    }
  });
  SampleBatch batch;
  batch.values = std::move(values);
  batch.seed = seed;
  batch.method = SampleMethod::physical;
  return batch;
}

}  // namespace detail

SampleBatch sample_physical(const Channel& ch, std::size_t count,
                            std::uint64_t seed, unsigned n_threads) {
  return detail::sample_physical_with_rate(ch, count, seed, 1.0, n_threads);
}

SampleBatch sample_inverse(const Channel& ch, std::size_t count,
                           std::uint64_t seed, unsigned n_threads) {
  auto values = run_blocks(count, n_threads, [&](std::size_t block,
                                                 double* out,
                                                 std::size_t len) {
    Xoshiro rng(splitmix64(seed) + 0x51ed270b9a5f4a21ULL, block + 1);
    for (std::size_t i = 0; i < len; ++i) {
      out[i] = snr_quantile(ch, rng.uniform01());
    }
  });
  SampleBatch batch;
  batch.values = std::move(values);
  batch.seed = seed;
  batch.method = SampleMethod::inverse;
  return batch;
}

}  // namespace alomax
