#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "alomax/distribution.hpp"
#include "alomax/errors.hpp"
#include "alomax/quadrature.hpp"

using alomax::AlphaLomaxParams;
using alomax::Channel;
using alomax::gmgf;
using alomax::snr_cdf;
using alomax::snr_mode;
using alomax::snr_moment;
using alomax::snr_pdf;
using alomax::snr_quantile;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// The (alpha, lambda) grid used by every distribution-wide property test.
std::vector<AlphaLomaxParams> parameter_grid() {
  std::vector<AlphaLomaxParams> grid;
  for (double a : {0.5, 1.0, 2.0, 3.5}) {
    for (double l : {0.0, 1.25, 2.5, 6.0}) {
      const double lam = (l == 0.0) ? 1.0 / a + 0.25 : l;
      if (lam > 1.0 / a) grid.emplace_back(a, lam);
    }
  }
  return grid;
}

}  // namespace

TEST_CASE("parameter validation and zeta values") {
  CHECK(AlphaLomaxParams(1.0, 2.0).zeta() == doctest::Approx(1.0).epsilon(1e-15));
  // Gamma(3/2) Gamma(1/2) = pi/2, squared = pi^2/4.
  CHECK(rel_err(AlphaLomaxParams(2.0, 1.0).zeta(), 2.4674011002723397) <= 1e-14);
  CHECK(rel_err(AlphaLomaxParams(2.0, 1.25).zeta(), 1.4355400220922600) <= 1e-14);
  CHECK(rel_err(AlphaLomaxParams(1.75, 1.25).zeta(), 1.6042909419583331) <= 1e-14);
  CHECK(rel_err(AlphaLomaxParams(3.5, 6.0).zeta(), 0.12879908696571921) <= 1e-14);
  CHECK(rel_err(AlphaLomaxParams(0.5, 2.25).zeta(), 2.5298221281347035) <= 1e-14);
  CHECK_THROWS_AS(AlphaLomaxParams(2.0, 0.4), alomax::domain_error);
  CHECK_THROWS_AS(AlphaLomaxParams(0.0, 2.0), alomax::domain_error);
  CHECK_THROWS_AS(AlphaLomaxParams(-1.0, 2.0), alomax::domain_error);
  CHECK_THROWS_AS(AlphaLomaxParams(1.0, 1.0), alomax::domain_error);
  CHECK_THROWS_AS(Channel(AlphaLomaxParams(1.0, 2.0), 0.0), alomax::domain_error);
  CHECK_THROWS_AS(Channel(AlphaLomaxParams(1.0, 2.0), -3.0), alomax::domain_error);
}

TEST_CASE("alpha=1 reduces to the heavy-tail special case exactly") {
  for (double lam : {1.5, 2.0, 3.0}) {
    const AlphaLomaxParams p(1.0, lam);
    CHECK(rel_err(p.zeta(), 1.0 / (lam - 1.0)) <= 4e-16);
    for (double gbar : {1.0, 10.0}) {
      const Channel ch(p, gbar);
      const double zeta = 1.0 / (lam - 1.0);
      for (double g : {0.3, 1.0, 4.0, 25.0}) {
        const double pdf_ref = lam * zeta / gbar *
                               std::pow(1.0 + zeta * g / gbar, -(lam + 1.0));
        const double cdf_ref = 1.0 - std::pow(1.0 + zeta * g / gbar, -lam);
        CHECK(rel_err(snr_pdf(ch, g), pdf_ref) <= 1e-14);
        CHECK(rel_err(snr_cdf(ch, g), cdf_ref) <= 1e-13);
      }
    }
  }
}

TEST_CASE("pdf hand values and endpoint behavior") {
  const Channel ch(AlphaLomaxParams(1.0, 2.0), 1.0);
  CHECK(rel_err(snr_pdf(ch, 1.0), 0.25) <= 1e-15);
  CHECK(snr_pdf(ch, 0.0) == doctest::Approx(2.0).epsilon(1e-15));

  const Channel heavy(AlphaLomaxParams(0.5, 2.25), 1.0);
  CHECK(std::isinf(snr_pdf(heavy, 0.0)));
  const Channel light(AlphaLomaxParams(2.0, 1.25), 1.0);
  CHECK(snr_pdf(light, 0.0) == 0.0);
  CHECK_THROWS_AS(snr_pdf(ch, -0.1), alomax::domain_error);
}

TEST_CASE("cdf hand values and limits") {
  const Channel ch(AlphaLomaxParams(1.0, 2.0), 1.0);
  CHECK(rel_err(snr_cdf(ch, 1.0), 0.75) <= 1e-15);
  CHECK(snr_cdf(ch, 0.0) == 0.0);
  CHECK(snr_cdf(ch, 1e12) == doctest::Approx(1.0));
  CHECK_THROWS_AS(snr_cdf(ch, -1.0), alomax::domain_error);
}

TEST_CASE("pdf integrates to one across the parameter grid") {
  for (const auto& p : parameter_grid()) {
    const Channel ch(p, 1.0);
    const auto q = alomax::integrate_semi_infinite(
        [&](double g) { return snr_pdf(ch, g); }, 1.0, 1e-12, 1e-11);
    CHECK(std::abs(q.value - 1.0) <= 1e-9);
  }
}

TEST_CASE("cdf matches integrated pdf") {
  const Channel ch(AlphaLomaxParams(2.0, 1.25), 3.0);
  for (double g : {0.5, 1.0, 5.0}) {
    const auto q = alomax::integrate(
        [&](double x) { return snr_pdf(ch, x); }, 0.0, g, 1e-12, 1e-11);
    CHECK(std::abs(q.value - snr_cdf(ch, g)) <= 1e-8);
  }
}

TEST_CASE("quantile round-trips through the cdf") {
  for (const auto& p : parameter_grid()) {
    const Channel ch(p, 2.5);
    for (int i = 1; i <= 99; ++i) {
      const double u = i / 100.0;
      CHECK(std::abs(snr_cdf(ch, snr_quantile(ch, u)) - u) <= 1e-12);
    }
  }
  const Channel ch(AlphaLomaxParams(2.5, 1.6), 10.0);
  CHECK(std::abs(snr_cdf(ch, snr_quantile(ch, 0.37)) - 0.37) <= 1e-12);
  CHECK(snr_quantile(ch, 0.0) == 0.0);
  CHECK_THROWS_AS(snr_quantile(ch, 1.0), alomax::domain_error);
  CHECK_THROWS_AS(snr_quantile(ch, -0.01), alomax::domain_error);
  CHECK_THROWS_AS(snr_quantile(ch, 1.01), alomax::domain_error);
}

TEST_CASE("quantile keeps precision in the deep upper tail") {
  // Survival round trip: the survival of Q(1 - eps) must recover the
  // survival actually encoded by the double 1 - eps, which a naive
  // 1 - F(g) evaluation would lose entirely.
  const Channel ch(AlphaLomaxParams(2.0, 1.25), 1.0);
  for (double su : {1e-6, 1e-10, 1e-14}) {
    const double encoded = 1.0 - (1.0 - su);
    const double g = snr_quantile(ch, 1.0 - su);
    const double sf = std::exp(-ch.lambda() * std::log1p(
                          ch.zeta() * std::pow(g / ch.mean_snr(), ch.alpha())));
    CHECK(rel_err(sf, encoded) <= 1e-9);
  }
}

TEST_CASE("moments: mean identity, hand value, divergence") {
  for (const auto& p : parameter_grid()) {
    for (double gbar : {0.7, 1.0, 42.0}) {
      const Channel ch(p, gbar);
      CHECK(rel_err(snr_moment(ch, 1.0), gbar) <= 1e-12);
    }
  }
  const Channel ch(AlphaLomaxParams(1.0, 3.0), 1.0);
  CHECK(rel_err(snr_moment(ch, 2.0), 4.0) <= 1e-13);
  CHECK(snr_moment(ch, 0.0) == doctest::Approx(1.0));
  // Fractional order against direct quadrature.
  const auto q = alomax::integrate_semi_infinite(
      [&](double g) { return std::pow(g, 1.3) * snr_pdf(ch, g); }, 1.0, 1e-12,
      1e-11);
  CHECK(rel_err(snr_moment(ch, 1.3), q.value) <= 1e-8);
  const Channel lom(AlphaLomaxParams(1.0, 2.0), 1.0);
  CHECK_THROWS_AS(snr_moment(lom, 2.0), alomax::domain_error);
  CHECK_THROWS_AS(snr_moment(lom, -0.5), alomax::domain_error);
}

TEST_CASE("mode formula matches numerical argmax") {
  const Channel ch(AlphaLomaxParams(2.0, 1.25), 1.0);
  const double m = snr_mode(ch);
  CHECK(rel_err(m, 0.44612681247851440) <= 1e-12);
  // Golden-section refinement of the argmax around the analytic value.
  double lo = 0.5 * m, hi = 2.0 * m;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  while (hi - lo > 1e-10) {
    const double x1 = hi - gr * (hi - lo);
    const double x2 = lo + gr * (hi - lo);
    if (snr_pdf(ch, x1) < snr_pdf(ch, x2)) lo = x1; else hi = x2;
  }
  CHECK(rel_err(0.5 * (lo + hi), m) <= 1e-6);
  // Decreasing density for alpha <= 1.
  const Channel dec(AlphaLomaxParams(1.0, 2.0), 1.0);
  CHECK(snr_mode(dec) == 0.0);
  double prev = std::numeric_limits<double>::infinity();
  for (double g = 0.0; g <= 10.0; g += 0.05) {
    const double v = snr_pdf(dec, g);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("generalized MGF against quadrature references") {
  // Reference values computed with 40-digit quadrature of the defining
  // integral.
  const Channel a(AlphaLomaxParams(1.0, 2.0), 1.0);
  CHECK(rel_err(gmgf(a, 0.0, 1.0), 0.59634736232319407) <= 1e-8);
  const Channel b(AlphaLomaxParams(1.75, 1.25), 10.0);
  CHECK(rel_err(gmgf(b, 1.0, 0.5), 0.30599950981930757) <= 1e-7);
  const Channel c(AlphaLomaxParams(2.0, 1.25), 5.0);
  CHECK(rel_err(gmgf(c, 0.0, 2.0), 0.030854016987742309) <= 1e-8);
  // Total probability limit.
  CHECK(gmgf(a, 0.0, 1e-7) == doctest::Approx(1.0).epsilon(1e-4));
}
