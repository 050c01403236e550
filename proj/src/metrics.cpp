#include "alomax/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "alomax/errors.hpp"
#include "alomax/fox_h.hpp"
#include "alomax/quadrature.hpp"
#include "alomax/special_functions.hpp"

namespace alomax {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kSqrt2Pi = 2.5066282746310005;

double require_threshold(double gamma0) {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw domain_error("outage: threshold must be positive and finite");
  }
  return gamma0;
}

// Incomplete moment kernel: 2F1(1+lambda, (p+alpha)/alpha;
// (p+2alpha)/alpha; -x) closes int_0^T g^p f(g) dg in elementary terms.
double theta_kernel(double lambda, double alpha, int p, double x) {
  const double b = (p + alpha) / alpha;
  return hyp2f1(1.0 + lambda, b, b + 1.0, -x);
}

}  // namespace

ModulationScheme::ModulationScheme(std::string name, double phi)
    : name_(std::move(name)), phi_(phi) {}

ModulationScheme ModulationScheme::bpsk() { return {"bpsk", 1.0}; }
ModulationScheme ModulationScheme::bfsk() { return {"bfsk", 0.5}; }
ModulationScheme ModulationScheme::msk() { return {"msk", 0.715}; }

ModulationScheme ModulationScheme::custom(double phi) {
  if (!(phi > 0.0 && phi <= 1.0)) {
    throw domain_error("ModulationScheme: phi must lie in (0, 1]");
  }
  return {"custom", phi};
}

ShortPacketConfig::ShortPacketConfig(int n_uses, int n_bits)
    : n_uses_(n_uses), n_bits_(n_bits) {
  if (n_uses_ < 1 || n_bits_ < 1) {
    throw std::invalid_argument(
        "ShortPacketConfig: channel uses and bits must be positive");
  }
  const double rate = static_cast<double>(n_bits_) / n_uses_;
  eta_ = std::expm1(rate * kLn2);
  delta_ = std::sqrt(n_uses_ / (2.0 * std::numbers::pi)) /
           std::sqrt(std::expm1(2.0 * rate * kLn2));
  const double half_width = std::sqrt(std::numbers::pi / 2.0) / delta_;
  mu_ = eta_ - half_width;
  upsilon_ = eta_ + half_width;
}

double AsymptoteResult::value_at(double mean_snr) const {
  return std::pow(coding_gain * mean_snr, -diversity_gain);
}

double outage_probability(const Channel& ch, double gamma0) {
  return snr_cdf(ch, require_threshold(gamma0));
}

double outage_probability(const Channel& ch, TargetRate rate) {
  return outage_probability(ch, std::expm1(rate.bits_per_hz * kLn2));
}

AsymptoteResult outage_asymptotic(const Channel& ch, double gamma0) {
  require_threshold(gamma0);
  AsymptoteResult r;
  r.diversity_gain = ch.alpha();
  r.coding_gain =
      std::exp(-(std::log(ch.lambda()) + ch.params().log_zeta()) /
               ch.alpha()) /
      gamma0;
  return r;
}

MetricValue ber_exact(const Channel& ch, const ModulationScheme& mod) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  MetricValue out;
  try {
    FoxHParams p;
    p.m = 1;
    p.n = 4;
    p.upper = {{0.5, a}, {0.5, 0.0}, {1.0 - l, 1.0}, {1.0, a}};
    p.lower = {{1.0, 1.0}, {0.0, a}};
    const double log_z =
        ch.params().log_zeta() -
        a * (std::log(ch.mean_snr()) + std::log(mod.phi()));
    const FoxHResult h = fox_h(p, std::exp(log_z));
    out.value = a / (2.0 * std::numbers::pi * std::tgamma(l)) * h.value;
  } catch (const convergence_error&) {
    MetricConfig cfg;
    cfg.modulation = mod;
    out.value = quadrature_reference(Metric::ber, ch, cfg);
    out.used_quadrature_fallback = true;
  }
  out.value = std::clamp(out.value, 0.0, 0.5);
  return out;
}

AsymptoteResult ber_asymptotic(const Channel& ch,
                               const ModulationScheme& mod) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  AsymptoteResult r;
  r.diversity_gain = a;
  r.coding_gain = std::exp(
      (std::log(2.0 * std::sqrt(std::numbers::pi)) +
       a * std::log(mod.phi()) - std::log(l) - ch.params().log_zeta() -
       std::lgamma(a + 0.5)) /
      a);
  return r;
}

MetricValue capacity_exact(const Channel& ch) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  MetricValue out;
  try {
    FoxHParams p;
    p.m = 3;
    p.n = 2;
    p.upper = {{1.0 - l, 1.0}, {0.0, a}, {1.0, a}};
    p.lower = {{1.0, 1.0}, {0.0, a}, {0.0, a}};
    const double log_z =
        ch.params().log_zeta() - a * std::log(ch.mean_snr());
    const FoxHResult h = fox_h(p, std::exp(log_z));
    out.value = a / (kLn2 * std::tgamma(l)) * h.value;
  } catch (const convergence_error&) {
    out.value = quadrature_reference(Metric::capacity, ch, MetricConfig{});
    out.used_quadrature_fallback = true;
  }
  out.value = std::max(out.value, 0.0);
  return out;
}

double capacity_asymptotic(const Channel& ch) {
  const double a = ch.alpha();
  return (a * std::log(ch.mean_snr()) - ch.params().log_zeta() -
          std::numbers::egamma - digamma(ch.lambda())) /
         (a * kLn2);
}

double bler_linearized(double gamma, const ShortPacketConfig& cfg) {
  if (gamma <= cfg.mu()) return 1.0;
  if (gamma >= cfg.upsilon()) return 0.0;
  return 0.5 - cfg.delta() / kSqrt2Pi * (gamma - cfg.eta());
}

MetricValue bler_exact(const Channel& ch, const ShortPacketConfig& cfg) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  MetricValue out;
  try {
    const double mu_c = std::max(cfg.mu(), 0.0);
    const double ups = cfg.upsilon();
    const double zeta_over = ch.zeta() / std::pow(ch.mean_snr(), a);
    const double x_up = zeta_over * std::pow(ups, a);
    const double x_mu = zeta_over * std::pow(mu_c, a);
    const double c1 = cfg.delta() * a * l * zeta_over /
                      (kSqrt2Pi * (1.0 + a));
    const double c2 =
        (0.5 + cfg.delta() * cfg.eta() / kSqrt2Pi) * l * zeta_over;
    const double first = std::pow(ups, a + 1.0) * theta_kernel(l, a, 1, x_up) -
                         std::pow(mu_c, a + 1.0) * theta_kernel(l, a, 1, x_mu);
    const double zeroth = std::pow(ups, a) * theta_kernel(l, a, 0, x_up) -
                          std::pow(mu_c, a) * theta_kernel(l, a, 0, x_mu);
    out.value = snr_cdf(ch, mu_c) - c1 * first + c2 * zeroth;
  } catch (const convergence_error&) {
    MetricConfig mc;
    mc.short_packet = cfg;
    out.value = quadrature_reference(Metric::bler, ch, mc);
    out.used_quadrature_fallback = true;
  }
  out.value = std::clamp(out.value, 0.0, 1.0);
  return out;
}

double bler_asymptotic(const Channel& ch, const ShortPacketConfig& cfg) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  const double mu_c = std::max(cfg.mu(), 0.0);
  const double ups = cfg.upsilon();
  const double zeta_over = ch.zeta() / std::pow(ch.mean_snr(), a);
  if (!(zeta_over * std::pow(ups, a) < 0.1)) {
    throw domain_error(
        "bler_asymptotic: mean SNR too low for the power-law expansion; "
        "use bler_exact");
  }
  const double c1 =
      cfg.delta() * a * l * zeta_over / (kSqrt2Pi * (1.0 + a));
  const double c2 =
      (0.5 + cfg.delta() * cfg.eta() / kSqrt2Pi) * l * zeta_over;
  return l * zeta_over * std::pow(mu_c, a) -
         c1 * (std::pow(ups, a + 1.0) - std::pow(mu_c, a + 1.0)) +
         c2 * (std::pow(ups, a) - std::pow(mu_c, a));
}

double quadrature_reference(Metric metric, const Channel& ch,
                            const MetricConfig& cfg) {
  constexpr double kAbs = 1e-300;
  constexpr double kRel = 1e-8;
  switch (metric) {
    case Metric::outage:
      return snr_cdf(ch, require_threshold(cfg.gamma0));
    case Metric::ber: {
      if (!cfg.modulation) {
        throw std::invalid_argument(
            "quadrature_reference: ber requires a modulation scheme");
      }
      const double phi = cfg.modulation->phi();
      const auto integrand = [&](double g) {
        return q_function(std::sqrt(2.0 * phi * g)) * snr_pdf(ch, g);
      };
      const double scale = std::min(ch.mean_snr(), 3.0 / phi);
      return integrate_semi_infinite(integrand, scale, kAbs, kRel).value;
    }
    case Metric::capacity: {
      const auto integrand = [&](double g) {
        return std::log1p(g) / kLn2 * snr_pdf(ch, g);
      };
      return integrate_semi_infinite(integrand, ch.mean_snr(), kAbs, kRel)
          .value;
    }
    case Metric::bler: {
      if (!cfg.short_packet) {
        throw std::invalid_argument(
            "quadrature_reference: bler requires a short-packet config");
      }
      const auto& sp = *cfg.short_packet;
      const double mu_c = std::max(sp.mu(), 0.0);
      const auto pdf = [&](double g) { return snr_pdf(ch, g); };
      const auto weighted = [&](double g) {
        return bler_linearized(g, sp) * snr_pdf(ch, g);
      };
      double total = 0.0;
      if (mu_c > 0.0) {
        total += integrate(pdf, 0.0, mu_c, kAbs, kRel).value;
      }
      total += integrate(weighted, mu_c, sp.upsilon(), kAbs, kRel).value;
      return total;
    }
  }
  throw std::invalid_argument("quadrature_reference: unknown metric");
}

}  // namespace alomax
