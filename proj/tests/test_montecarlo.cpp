#include <doctest.h>

#include <cmath>

#include "alomax/errors.hpp"
#include "alomax/montecarlo.hpp"

using alomax::AlphaLomaxParams;
using alomax::Channel;
using alomax::Estimate;
using alomax::McConfig;
using alomax::Metric;
using alomax::MetricConfig;
using alomax::ModulationScheme;
using alomax::SampleBatch;
using alomax::ShortPacketConfig;

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

TEST_CASE("estimates are bit-identical across stream counts") {
  const Channel ch(AlphaLomaxParams(1.75, 1.25), db_to_linear(10));
  MetricConfig cfg;
  cfg.modulation = ModulationScheme::bpsk();
  McConfig mc;
  mc.seed = 7;
  mc.n_samples = 100'000;
  Estimate base;
  for (unsigned streams : {1u, 4u, 16u}) {
    mc.n_streams = streams;
    const auto e = alomax::estimate_metric(Metric::ber, ch, cfg, mc);
    if (streams == 1u) {
      base = e;
    } else {
      CHECK(e.mean == base.mean);
      CHECK(e.std_error == base.std_error);
    }
  }
}

TEST_CASE("outage estimate brackets the closed form") {
  const Channel ch(AlphaLomaxParams(1.0, 2.0), 10.0);
  MetricConfig cfg;
  cfg.gamma0 = 1.0;
  McConfig mc;
  mc.seed = 2024;
  mc.n_samples = 1'000'000;
  mc.n_streams = 4;
  const auto e = alomax::estimate_metric(Metric::outage, ch, cfg, mc);
  CHECK(std::abs(e.mean - 0.17355371900826446) <= 4.0 * e.std_error);
  CHECK(e.ci95_low == doctest::Approx(e.mean - 1.96 * e.std_error));
  CHECK(e.ci95_high == doctest::Approx(e.mean + 1.96 * e.std_error));
  CHECK(e.n_used == mc.n_samples);
}

TEST_CASE("BER estimate brackets the closed form") {
  const Channel ch(AlphaLomaxParams(1.75, 1.25), db_to_linear(10));
  MetricConfig cfg;
  cfg.modulation = ModulationScheme::bpsk();
  McConfig mc;
  mc.seed = 5;
  mc.n_samples = 2'000'000;
  mc.n_streams = 4;
  const auto e = alomax::estimate_metric(Metric::ber, ch, cfg, mc);
  const double want = 0.0099521495951244083;
  CHECK(std::abs(e.mean - want) <= 4.0 * e.std_error);
}

TEST_CASE("capacity estimate vanishes with the SNR") {
  const Channel ch(AlphaLomaxParams(2.0, 1.5), 1e-9);
  McConfig mc;
  mc.n_samples = 10'000;
  const auto e = alomax::estimate_metric(Metric::capacity, ch, {}, mc);
  CHECK(e.mean <= 1e-7);
}

TEST_CASE("degenerate variance is reported as zero standard error") {
  const Channel ch(AlphaLomaxParams(1.0, 2.0), 1e12);
  MetricConfig cfg;
  cfg.gamma0 = 1e-6;  // indicator almost surely zero
  McConfig mc;
  mc.n_samples = 10'000;
  const auto e = alomax::estimate_metric(Metric::outage, ch, cfg, mc);
  CHECK(e.mean == 0.0);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("BLER estimate brackets the closed form") {
  const Channel ch(AlphaLomaxParams(1.75, 1.25), db_to_linear(5));
  MetricConfig cfg;
  cfg.short_packet = ShortPacketConfig(100, 50);
  McConfig mc;
  mc.seed = 31;
  mc.n_samples = 1'000'000;
  mc.n_streams = 2;
  const auto e = alomax::estimate_metric(Metric::bler, ch, cfg, mc);
  CHECK(std::abs(e.mean - 0.059469866981778887) <= 4.0 * e.std_error);
}

TEST_CASE("one-sample KS test detects a mismatched channel") {
  const Channel ch(AlphaLomaxParams(1.75, 1.25), 1.0);
  const auto batch = alomax::sample_inverse(ch, 1'000'000, 77, 4);
  CHECK(alomax::ks_test(batch, ch).pass_at_01);
  const Channel wrong(AlphaLomaxParams(3.5, 1.25), 1.0);
  CHECK_FALSE(alomax::ks_test(batch, wrong).pass_at_01);
}

TEST_CASE("single draw at the median has KS statistic one half") {
  const Channel ch(AlphaLomaxParams(1.0, 2.0), 1.0);
  SampleBatch batch;
  batch.values = {alomax::snr_quantile(ch, 0.5)};
  CHECK(alomax::ks_test(batch, ch).statistic == doctest::Approx(0.5));
}

TEST_CASE("empty batch is rejected") {
  const Channel ch(AlphaLomaxParams(1.0, 2.0), 1.0);
  SampleBatch empty;
  CHECK_THROWS_AS(alomax::ks_test(empty, ch), std::invalid_argument);
}

TEST_CASE("semi-analytic BER beats the Bernoulli estimator variance") {
  // Averaging the conditional error probability has strictly smaller
  // variance than simulating bits: var(Q) <= E[Q(1-Q)] + var(Q) = var(bit).
  const Channel ch(AlphaLomaxParams(1.75, 1.25), db_to_linear(10));
  McConfig mc;
  mc.seed = 9;
  mc.n_samples = 200'000;
  MetricConfig cfg;
  cfg.modulation = ModulationScheme::bpsk();
  const auto semi = alomax::estimate_metric(Metric::ber, ch, cfg, mc);
  // Bernoulli std error at equal n given the same mean.
  const double p = semi.mean;
  const double bernoulli_se = std::sqrt(p * (1.0 - p) / mc.n_samples);
  CHECK(semi.std_error < bernoulli_se);
}
