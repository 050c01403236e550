#include "alomax/distribution.hpp"

#include <cmath>
#include <limits>

#include "alomax/errors.hpp"
#include "alomax/fox_h.hpp"
#include "alomax/special_functions.hpp"

namespace alomax {

AlphaLomaxParams::AlphaLomaxParams(double alpha, double lambda)
    : alpha_(alpha), lambda_(lambda) {
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw domain_error("AlphaLomaxParams: alpha must be positive and finite");
  }
  if (!(lambda_ > 1.0 / alpha_) || !std::isfinite(lambda_)) {
    throw domain_error(
        "AlphaLomaxParams: lambda must exceed 1/alpha and be finite");
  }
  // log E[unit-rate envelope] = lgamma(1+1/alpha) + lgamma(lambda-1/alpha)
  // - lgamma(lambda); zeta = exp(alpha * that).  Stored in log form so the
  // first-moment identity cancels at machine precision.
  const double g = std::lgamma(1.0 + 1.0 / alpha_) +
                   std::lgamma(lambda_ - 1.0 / alpha_) - std::lgamma(lambda_);
  log_zeta_ = alpha_ * g;
  zeta_ = std::exp(log_zeta_);
}

Channel::Channel(AlphaLomaxParams params, double mean_snr)
    : params_(params), mean_snr_(mean_snr) {
  if (!(mean_snr_ > 0.0) || !std::isfinite(mean_snr_)) {
    throw domain_error("Channel: mean SNR must be positive and finite");
  }
}

double snr_pdf(const Channel& ch, double gamma) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  if (!(gamma >= 0.0)) {
    throw domain_error("snr_pdf: gamma must be non-negative");
  }
  if (gamma == 0.0) {
    if (a > 1.0) return 0.0;
    if (a == 1.0) return l * ch.zeta() / ch.mean_snr();
    return std::numeric_limits<double>::infinity();
  }
  // alpha lambda zeta / gbar^alpha * g^(alpha-1) *
  // (1 + zeta (g/gbar)^alpha)^-(lambda+1), assembled in logs so extreme
  // tails neither overflow nor flush to zero prematurely.
  const double log_x =
      ch.params().log_zeta() + a * (std::log(gamma) - std::log(ch.mean_snr()));
  const double log1p_x =
      log_x > 700.0 ? log_x : std::log1p(std::exp(log_x));
  const double log_pdf = std::log(a * l) + ch.params().log_zeta() -
                         a * std::log(ch.mean_snr()) +
                         (a - 1.0) * std::log(gamma) - (l + 1.0) * log1p_x;
  return std::exp(log_pdf);
}

double snr_cdf(const Channel& ch, double gamma) {
  if (std::isnan(gamma) || gamma < 0.0) {
    throw domain_error("snr_cdf: gamma must be non-negative");
  }
  if (gamma == 0.0) return 0.0;
  const double a = ch.alpha();
  const double l = ch.lambda();
  const double log_x =
      ch.params().log_zeta() + a * (std::log(gamma) - std::log(ch.mean_snr()));
  const double log1p_x =
      log_x > 700.0 ? log_x : std::log1p(std::exp(log_x));
  // 1 - (1+x)^-lambda without cancellation near zero.
  return -std::expm1(-l * log1p_x);
}

double snr_quantile(const Channel& ch, double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw domain_error("snr_quantile: u must lie in [0, 1)");
  }
  if (u == 0.0) return 0.0;
  const double a = ch.alpha();
  const double l = ch.lambda();
  // Invert u = 1-(1+x)^-lambda, then gamma = gbar (x/zeta)^(1/alpha).
  const double log1p_x = -std::log1p(-u) / l;
  const double x = std::expm1(log1p_x);
  return ch.mean_snr() *
         std::exp((std::log(x) - ch.params().log_zeta()) / a);
}

double snr_moment(const Channel& ch, double n) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  if (!(n >= 0.0)) {
    throw domain_error("snr_moment: order must be non-negative");
  }
  if (!(n < a * l)) {
    throw domain_error(
        "snr_moment: moment diverges for order >= alpha*lambda");
  }
  if (n == 0.0) return 1.0;
  // gbar^n zeta^(-n/alpha) lambda B(1+n/alpha, lambda-n/alpha); the lambda
  // folds Gamma(1+lambda) down to Gamma(lambda), and zeta^(-n/alpha) unwinds
  // the same lgamma sum that defines zeta, so at n = 1 the exponent reduces
  // to log(mean_snr) exactly.
  const double r = n / a;
  const double g = std::lgamma(1.0 + 1.0 / a) +
                   std::lgamma(l - 1.0 / a) - std::lgamma(l);
  const double h =
      std::lgamma(1.0 + r) + std::lgamma(l - r) - std::lgamma(l);
  return std::exp(n * std::log(ch.mean_snr()) + h - n * g);
}

double snr_mode(const Channel& ch) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  if (a <= 1.0) return 0.0;
  const double x = (a - 1.0) / (a * l + 1.0);
  return ch.mean_snr() *
         std::exp((std::log(x) - ch.params().log_zeta()) / a);
}

double gmgf(const Channel& ch, double n, double s) {
  const double a = ch.alpha();
  const double l = ch.lambda();
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw domain_error("gmgf: s must be positive and finite");
  }
  if (!(n >= 0.0) || !(n < a * l)) {
    throw domain_error("gmgf: order must satisfy 0 <= n < alpha*lambda");
  }
  FoxHParams p;
  p.m = 1;
  p.n = 2;
  p.upper = {{1.0 - l, 1.0}, {1.0 - n, a}};
  p.lower = {{1.0, 1.0}};
  // z = zeta / (gbar s)^alpha, assembled in logs to avoid overflow.
  const double log_z = ch.params().log_zeta() -
                       a * (std::log(ch.mean_snr()) + std::log(s));
  const FoxHResult h = fox_h(p, std::exp(log_z));
  return a / (std::pow(s, n) * std::tgamma(l)) * h.value;
}

}  // namespace alomax
