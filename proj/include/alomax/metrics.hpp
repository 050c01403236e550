#pragma once

#include <optional>
#include <string>

#include "alomax/distribution.hpp"

namespace alomax {

// Coherent binary modulation, parameterized by the SNR scaling phi of the
// conditional bit error rate Q(sqrt(2 phi g)).
class ModulationScheme {
public:
  static ModulationScheme bpsk();    // phi = 1
  static ModulationScheme bfsk();    // phi = 0.5
  static ModulationScheme msk();     // phi = 0.715
  static ModulationScheme custom(double phi);  // 0 < phi <= 1

  double phi() const { return phi_; }
  const std::string& name() const { return name_; }

private:
  ModulationScheme(std::string name, double phi);
  std::string name_;
  double phi_;
};

// Finite-blocklength configuration: N channel uses carrying K information
// bits, with the derived knots of the linearized block error curve.
class ShortPacketConfig {
public:
  ShortPacketConfig(int n_uses, int n_bits);

  int n_uses() const { return n_uses_; }
  int n_bits() const { return n_bits_; }
  double eta() const { return eta_; }          // 2^(K/N) - 1
  double delta() const { return delta_; }      // slope scale at eta
  double mu() const { return mu_; }            // lower knot, may be < 0
  double upsilon() const { return upsilon_; }  // upper knot

private:
  int n_uses_;
  int n_bits_;
  double eta_, delta_, mu_, upsilon_;
};

// Rate threshold for outage, converted to an SNR threshold 2^rate - 1.
struct TargetRate {
  double bits_per_hz;
};

// High-SNR power-law approximation value_at(gbar) = (Gc * gbar)^(-Gd).
struct AsymptoteResult {
  double coding_gain = 0.0;
  double diversity_gain = 0.0;
  double value_at(double mean_snr) const;
};

// Result of a closed-form evaluation that may have degraded to the
// quadrature reference path after a convergence failure.
struct MetricValue {
  double value = 0.0;
  bool used_quadrature_fallback = false;
};

double outage_probability(const Channel& ch, double gamma0);
double outage_probability(const Channel& ch, TargetRate rate);
AsymptoteResult outage_asymptotic(const Channel& ch, double gamma0);

MetricValue ber_exact(const Channel& ch, const ModulationScheme& mod);
AsymptoteResult ber_asymptotic(const Channel& ch, const ModulationScheme& mod);

MetricValue capacity_exact(const Channel& ch);
double capacity_asymptotic(const Channel& ch);

// Linearized block error probability at instantaneous SNR gamma: 1 below
// the lower knot, 0 above the upper knot, linear with slope -delta/sqrt(2 pi)
// through (eta, 1/2) between them.
double bler_linearized(double gamma, const ShortPacketConfig& cfg);

MetricValue bler_exact(const Channel& ch, const ShortPacketConfig& cfg);

// Requires zeta * upsilon^alpha / gbar^alpha < 0.1; below that the
// power-law expansion is meaningless and domain_error suggests bler_exact.
double bler_asymptotic(const Channel& ch, const ShortPacketConfig& cfg);

enum class Metric { outage, ber, capacity, bler };

struct MetricConfig {
  double gamma0 = 1.0;
  std::optional<ModulationScheme> modulation;
  std::optional<ShortPacketConfig> short_packet;
};

// Direct adaptive quadrature of the defining integral of each metric; the
// in-repo ground truth for every closed form.  Relative tolerance 1e-8 with
// a vanishing absolute floor, so small metric values keep full precision.
double quadrature_reference(Metric metric, const Channel& ch,
                            const MetricConfig& cfg);

}  // namespace alomax
