#pragma once

namespace alomax {

// Shape parameters of the compound fading model: the envelope is a
// power-transformed (exponent 1/alpha) exponential whose rate is Gamma
// distributed with shape lambda.  Requires alpha > 0 and lambda > 1/alpha,
// which makes the mean of the normalized envelope finite.
class AlphaLomaxParams {
public:
  AlphaLomaxParams(double alpha, double lambda);

  double alpha() const { return alpha_; }
  double lambda() const { return lambda_; }

  // zeta = (Gamma(1 + 1/alpha) Gamma(lambda - 1/alpha) / Gamma(lambda))^alpha,
  // the normalization constant that fixes E[normalized envelope] = 1.
  double zeta() const { return zeta_; }
  double log_zeta() const { return log_zeta_; }

private:
  double alpha_;
  double lambda_;
  double zeta_;
  double log_zeta_;
};

// A channel is the shape pair plus the mean SNR (linear scale).
class Channel {
public:
  Channel(AlphaLomaxParams params, double mean_snr);

  const AlphaLomaxParams& params() const { return params_; }
  double mean_snr() const { return mean_snr_; }
  double alpha() const { return params_.alpha(); }
  double lambda() const { return params_.lambda(); }
  double zeta() const { return params_.zeta(); }

private:
  AlphaLomaxParams params_;
  double mean_snr_;
};

// Instantaneous SNR density f(g) = (alpha lambda zeta / gbar^alpha)
// g^(alpha-1) (1 + zeta g^alpha / gbar^alpha)^(-(lambda+1)) for g >= 0.
// At g = 0 the density is infinite when alpha < 1 (integrable endpoint,
// returned as +inf), alpha lambda zeta / gbar when alpha = 1, and 0 when
// alpha > 1.  Negative g throws domain_error.
double snr_pdf(const Channel& ch, double gamma);

// F(g) = 1 - (1 + zeta g^alpha / gbar^alpha)^(-lambda), computed via
// expm1/log1p so the deep upper tail keeps full relative precision.
double snr_cdf(const Channel& ch, double gamma);

// Inverse CDF on u in [0, 1); anything outside throws domain_error.
double snr_quantile(const Channel& ch, double u);

// E[SNR^n] = gbar^n lambda zeta^(-n/alpha) B(1 + n/alpha, lambda - n/alpha),
// finite exactly when 0 <= n < alpha lambda; outside that range throws
// domain_error.  n may be fractional.  moment(1) returns mean_snr exactly.
double snr_moment(const Channel& ch, double n);

// Generalized MGF E[SNR^n exp(-s SNR)] for n >= 0, s > 0, evaluated in
// closed form through the contour-integral engine; convergence errors
// propagate.
double gmgf(const Channel& ch, double n, double s);

// Mode of the SNR density for alpha > 1:
// gbar zeta^(-1/alpha) ((alpha-1)/(alpha lambda + 1))^(1/alpha).
// For alpha <= 1 the density is decreasing and the mode is 0.
double snr_mode(const Channel& ch);

}  // namespace alomax
