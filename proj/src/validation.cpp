#include "alomax/validation.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "alomax/distribution.hpp"
#include "alomax/errors.hpp"
#include "alomax/fitting.hpp"
#include "alomax/fox_h.hpp"
#include "alomax/metrics.hpp"
#include "alomax/montecarlo.hpp"
#include "alomax/quadrature.hpp"
#include "alomax/sampling.hpp"

namespace alomax {

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::scientific << v;
  return ss.str();
}

// (alpha, lambda) grid spanning singular, boundary, and smooth shapes;
// lambda candidates below the 1/alpha feasibility line are skipped.
std::vector<std::pair<double, double>> shape_grid() {
  std::vector<std::pair<double, double>> grid;
  for (double a : {0.5, 1.0, 2.0, 3.5}) {
    for (double l : {1.0 / a + 0.25, 1.25, 2.5, 6.0}) {
      if (l > 1.0 / a) grid.emplace_back(a, l);
    }
  }
  return grid;
}

struct Budget {
  double max_rel = 0.0;
  double worst = 0.0;
  int points = 0;
  bool ok = true;

  void take(double rel) {
    worst = std::max(worst, rel);
    ++points;
    if (rel > max_rel) ok = false;
  }

  std::string detail(const char* label) const {
    std::ostringstream ss;
    ss << points << " points, worst " << label << " " << fmt(worst)
       << " (tol " << fmt(max_rel) << ")";
    return ss.str();
  }
};

CheckResult check_fox_h_reduction() {
  CheckResult r;
  r.name = "fox-h-reduction";
  Budget b;
  b.max_rel = 1e-8;
  for (double lambda : {1.5, 2.5, 4.0}) {
    FoxHParams p;
    p.m = 1;
    p.n = 1;
    p.upper = {{1.0 - lambda, 1.0}};
    p.lower = {{0.0, 1.0}};
    for (double z : {0.1, 1.0, 10.0}) {
      const double want =
          std::tgamma(lambda) * std::pow(1.0 + z, -lambda);
      const double got = fox_h(p, z).value;
      b.take(rel_err(got, want));
    }
  }
  r.passed = b.ok;
  r.detail = b.detail("rel err");
  return r;
}

CheckResult check_distribution_suite() {
  CheckResult r;
  r.name = "distribution-suite";
  Budget norm;
  norm.max_rel = 1e-9;
  Budget mom;
  mom.max_rel = 1e-12;
  Budget cdfint;
  cdfint.max_rel = 1e-8;
  Budget qround;
  qround.max_rel = 1e-12;
  for (const auto& [a, l] : shape_grid()) {
    const Channel ch(AlphaLomaxParams(a, l), 1.7);
    const auto pdf = [&](double g) { return snr_pdf(ch, g); };
    const double mass =
        integrate_semi_infinite(pdf, ch.mean_snr(), 1e-11, 1e-11).value;
    norm.take(std::abs(mass - 1.0));
    mom.take(rel_err(snr_moment(ch, 1.0), ch.mean_snr()));
    for (double g : {0.4, 1.7, 5.0}) {
      const double direct = integrate(pdf, 0.0, g, 1e-11, 1e-10).value;
      cdfint.take(std::abs(snr_cdf(ch, g) - direct));
    }
    for (double u : {0.01, 0.25, 0.5, 0.9, 0.999}) {
      qround.take(std::abs(snr_cdf(ch, snr_quantile(ch, u)) - u));
    }
  }
  r.passed = norm.ok && mom.ok && cdfint.ok && qround.ok;
  std::ostringstream ss;
  ss << "norm " << fmt(norm.worst) << ", mean " << fmt(mom.worst)
     << ", cdf-vs-int " << fmt(cdfint.worst) << ", quantile "
     << fmt(qround.worst);
  r.detail = ss.str();
  return r;
}

CheckResult check_sampler_ks() {
  CheckResult r;
  r.name = "sampler-ks";
  const std::size_t n = 1'000'000;
  bool ok = true;
  double worst = 0.0;
  for (const auto& [a, l] :
       std::vector<std::pair<double, double>>{{1.75, 1.25}, {2.0, 1.25}}) {
    const Channel ch(AlphaLomaxParams(a, l), 1.0);
    const auto phys = sample_physical(ch, n, 2024, 4);
    const auto one = ks_test(phys, ch);
    ok = ok && one.pass_at_01;
    worst = std::max(worst, one.statistic / one.threshold);
    const auto inv = sample_inverse(ch, n, 2025, 4);
    const auto two = ks_test_two_sample(phys, inv);
    ok = ok && two.pass_at_01;
    worst = std::max(worst, two.statistic / two.threshold);
  }
  r.passed = ok;
  std::ostringstream ss;
  ss << "worst statistic/threshold " << fmt(worst) << " at n=" << n;
  r.detail = ss.str();
  return r;
}

CheckResult check_heavy_tail_reduction() {
  CheckResult r;
  r.name = "heavy-tail-reduction";
  Budget b;
  b.max_rel = 1e-13;
  for (double l : {1.5, 2.0, 4.0}) {
    const double gbar = 3.0;
    const Channel ch(AlphaLomaxParams(1.0, l), gbar);
    const double zeta = 1.0 / (l - 1.0);
    b.take(rel_err(ch.zeta(), zeta));
    for (double g : {0.1, 1.0, 3.0, 20.0}) {
      const double x = zeta * g / gbar;
      const double pdf_ref =
          l * zeta / gbar * std::pow(1.0 + x, -(l + 1.0));
      const double cdf_ref = 1.0 - std::pow(1.0 + x, -l);
      b.take(rel_err(snr_pdf(ch, g), pdf_ref));
      b.take(rel_err(snr_cdf(ch, g), cdf_ref));
      b.take(rel_err(outage_probability(ch, g), cdf_ref));
    }
  }
  r.passed = b.ok;
  r.detail = b.detail("rel err");
  return r;
}

CheckResult check_ber_closed_form() {
  CheckResult r;
  r.name = "ber-closed-form";
  Budget quad;
  quad.max_rel = 1e-5;
  Budget asym;
  asym.max_rel = 0.05;
  const AlphaLomaxParams p(1.75, 1.25);
  for (const auto& mod : {ModulationScheme::bpsk(), ModulationScheme::bfsk(),
                          ModulationScheme::msk()}) {
    MetricConfig cfg;
    cfg.modulation = mod;
    for (double db = 0.0; db <= 30.0; db += 5.0) {
      const Channel ch(p, db_to_linear(db));
      const auto exact = ber_exact(ch, mod);
      const double reference = quadrature_reference(Metric::ber, ch, cfg);
      quad.take(rel_err(exact.value, reference));
    }
    const Channel far(p, db_to_linear(50.0));
    const double exact50 = ber_exact(far, mod).value;
    const double asym50 = ber_asymptotic(far, mod).value_at(far.mean_snr());
    asym.take(rel_err(exact50, asym50));
  }
  r.passed = quad.ok && asym.ok;
  std::ostringstream ss;
  ss << quad.points << " sweep points, worst vs quadrature "
     << fmt(quad.worst) << ", worst 50 dB asymptote gap " << fmt(asym.worst);
  r.detail = ss.str();
  return r;
}

CheckResult check_capacity_closed_form() {
  CheckResult r;
  r.name = "capacity-closed-form";
  Budget quad;
  quad.max_rel = 1e-6;
  bool monotone = true;
  double gap40 = 0.0;
  MetricConfig cfg;
  for (double db : {0.0, 10.0, 20.0}) {
    double prev = 0.0;
    for (double a : {1.0, 2.0, 4.0, 7.0}) {
      const Channel ch(AlphaLomaxParams(a, 1.5), db_to_linear(db));
      const auto exact = capacity_exact(ch);
      const double reference =
          quadrature_reference(Metric::capacity, ch, cfg);
      quad.take(rel_err(exact.value, reference));
      monotone = monotone && exact.value > prev &&
                 exact.value < std::log2(1.0 + ch.mean_snr());
      prev = exact.value;
    }
  }
  const Channel far(AlphaLomaxParams(2.0, 1.5), db_to_linear(40.0));
  gap40 = std::abs(capacity_exact(far).value - capacity_asymptotic(far));
  r.passed = quad.ok && monotone && gap40 <= 0.01;
  std::ostringstream ss;
  ss << quad.points << " points, worst vs quadrature " << fmt(quad.worst)
     << ", 40 dB asymptote gap " << fmt(gap40)
     << (monotone ? ", monotone in alpha" : ", NOT monotone in alpha");
  r.detail = ss.str();
  return r;
}

CheckResult check_diversity_slope() {
  CheckResult r;
  r.name = "diversity-slope";
  Budget b;
  b.max_rel = 0.02;
  const double g40 = db_to_linear(40.0);
  const double g60 = db_to_linear(60.0);
  const double span = std::log(g60) - std::log(g40);
  for (double a : {1.0, 2.0, 3.0}) {
    for (double l : {1.25, 2.5}) {
      const AlphaLomaxParams p(a, l);
      const Channel lo(p, g40);
      const Channel hi(p, g60);
      const double op_slope = (std::log(outage_probability(hi, 1.0)) -
                               std::log(outage_probability(lo, 1.0))) /
                              span;
      b.take(std::abs(-op_slope - a) / a);
      for (const auto& mod :
           {ModulationScheme::bpsk(), ModulationScheme::msk()}) {
        const double ber_slope = (std::log(ber_exact(hi, mod).value) -
                                  std::log(ber_exact(lo, mod).value)) /
                                 span;
        b.take(std::abs(-ber_slope - a) / a);
      }
    }
  }
  r.passed = b.ok;
  r.detail = b.detail("slope rel err");
  return r;
}

CheckResult check_bler_closed_form() {
  CheckResult r;
  r.name = "bler-closed-form";
  Budget quad;
  quad.max_rel = 1e-6;
  bool decreasing_n = true;
  Budget asym;
  asym.max_rel = 0.05;
  for (double a : {1.0, 1.75}) {
    const AlphaLomaxParams p(a, 1.25);
    for (double db = 0.0; db <= 20.0; db += 5.0) {
      const Channel ch(p, db_to_linear(db));
      double prev = 1.0;
      for (int n : {100, 200, 400}) {
        const ShortPacketConfig sp(n, 50);
        MetricConfig cfg;
        cfg.short_packet = sp;
        const auto exact = bler_exact(ch, sp);
        const double reference =
            quadrature_reference(Metric::bler, ch, cfg);
        if (reference > 1e-10) {
          quad.take(rel_err(exact.value, reference));
        }
        decreasing_n = decreasing_n && exact.value < prev;
        prev = exact.value;
      }
    }
    const Channel far(p, db_to_linear(40.0));
    for (int n : {100, 200, 400}) {
      const ShortPacketConfig sp(n, 50);
      asym.take(rel_err(bler_exact(far, sp).value, bler_asymptotic(far, sp)));
    }
  }
  r.passed = quad.ok && decreasing_n && asym.ok;
  std::ostringstream ss;
  ss << quad.points << " points, worst vs quadrature " << fmt(quad.worst)
     << ", worst 40 dB asymptote gap " << fmt(asym.worst)
     << (decreasing_n ? ", decreasing in blocklength" : ", NOT decreasing");
  r.detail = ss.str();
  return r;
}

CheckResult check_mc_coverage() {
  CheckResult r;
  r.name = "mc-coverage";
  struct Point {
    Metric metric;
    Channel ch;
    MetricConfig cfg;
    double truth;
  };
  std::vector<Point> points;
  {
    const Channel ch(AlphaLomaxParams(1.0, 2.0), 10.0);
    MetricConfig cfg;
    cfg.gamma0 = 1.0;
    points.push_back({Metric::outage, ch, cfg, outage_probability(ch, 1.0)});
  }
  {
    const Channel ch(AlphaLomaxParams(1.75, 1.25), db_to_linear(10.0));
    MetricConfig cfg;
    cfg.modulation = ModulationScheme::bpsk();
    points.push_back(
        {Metric::ber, ch, cfg, ber_exact(ch, *cfg.modulation).value});
  }
  {
    const Channel ch(AlphaLomaxParams(2.0, 1.5), db_to_linear(10.0));
    MetricConfig cfg;
    points.push_back({Metric::capacity, ch, cfg, capacity_exact(ch).value});
  }
  {
    const Channel ch(AlphaLomaxParams(1.75, 1.25), db_to_linear(5.0));
    MetricConfig cfg;
    cfg.short_packet = ShortPacketConfig(100, 50);
    points.push_back(
        {Metric::bler, ch, cfg, bler_exact(ch, *cfg.short_packet).value});
  }

  bool ok = true;
  std::ostringstream ss;
  for (const auto& pt : points) {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      McConfig mc;
      mc.seed = seed;
      mc.n_samples = 20'000;
      const auto est = estimate_metric(pt.metric, pt.ch, pt.cfg, mc);
      if (pt.truth >= est.ci95_low && pt.truth <= est.ci95_high) ++hits;
    }
    ok = ok && hits >= 90;
    ss << hits << "/100 ";
  }
  // Stream count must never change the estimate.
  {
    const auto& pt = points[1];
    McConfig mc;
    mc.seed = 5;
    mc.n_samples = 20'000;
    mc.n_streams = 1;
    const auto one = estimate_metric(pt.metric, pt.ch, pt.cfg, mc);
    mc.n_streams = 4;
    const auto four = estimate_metric(pt.metric, pt.ch, pt.cfg, mc);
    const bool exact = one.mean == four.mean &&
                       one.std_error == four.std_error;
    ok = ok && exact;
    ss << (exact ? "stream-invariant" : "STREAM-DEPENDENT");
  }
  r.passed = ok;
  r.detail = "ci95 hits: " + ss.str();
  return r;
}

CheckResult check_fit_recovery() {
  CheckResult r;
  r.name = "fit-recovery";
  bool ok = true;
  std::ostringstream ss;

  // Noiseless binned truth.
  {
    const Channel ch(AlphaLomaxParams(2.0, 1.25), 1.0);
    EmpiricalPdf data;
    const double hi = snr_quantile(ch, 0.995);
    const int bins = 60;
    for (int i = 0; i < bins; ++i) {
      const double c = (i + 0.5) * hi / bins;
      data.centers.push_back(c);
      data.densities.push_back(snr_pdf(ch, c));
      data.widths.push_back(hi / bins);
    }
    const auto fit = fit_rad(data, FitDomain::snr);
    const bool good = std::abs(fit.alpha - 2.0) / 2.0 <= 0.02 &&
                      std::abs(fit.lambda - 1.25) / 1.25 <= 0.05;
    ok = ok && good;
    ss << "rad alpha " << fmt(rel_err(fit.alpha, 2.0)) << " lambda "
       << fmt(rel_err(fit.lambda, 1.25));
  }

  // Finite-sample maximum likelihood.
  {
    const Channel ch(AlphaLomaxParams(2.0, 1.25), 1.0);
    const auto batch = sample_inverse(ch, 100'000, 7, 4);
    const auto fit = fit_mle(batch.values, FitDomain::snr);
    const bool good = std::abs(fit.alpha - 2.0) / 2.0 <= 0.05 &&
                      std::abs(fit.lambda - 1.25) / 1.25 <= 0.15 &&
                      std::abs(fit.scale - 1.0) <= 0.03;
    ok = ok && good;
    ss << ", mle alpha " << fmt(rel_err(fit.alpha, 2.0)) << " lambda "
       << fmt(rel_err(fit.lambda, 1.25)) << " scale "
       << fmt(rel_err(fit.scale, 1.0));
  }

  // Divergence identities on a deterministic family of density pairs.
  {
    bool props = true;
    for (int k = 0; k < 4; ++k) {
      const double a1 = 1.0 + 0.5 * k;
      const double a2 = 1.2 + 0.4 * k;
      const Channel c1(AlphaLomaxParams(a1, 1.0 / a1 + 0.8), 1.0);
      const Channel c2(AlphaLomaxParams(a2, 1.0 / a2 + 1.3), 1.2);
      EmpiricalPdf p;
      std::vector<double> q;
      for (double g = 0.025; g < 8.0; g += 0.05) {
        p.centers.push_back(g);
        p.densities.push_back(snr_pdf(c1, g));
        p.widths.push_back(0.05);
        q.push_back(snr_pdf(c2, g));
      }
      EmpiricalPdf qp = p;
      qp.densities = q;
      const double d_pq = kl_divergence(p, q);
      const double d_qp = kl_divergence(qp, p.densities);
      const double rad = resistor_average(d_pq, d_qp);
      props = props && kl_divergence(p, p.densities) == 0.0;
      props = props &&
              rad == resistor_average(d_qp, d_pq);  // symmetric by form
      props = props && rad <= std::min(d_pq, d_qp) + 1e-15;
    }
    ok = ok && props;
    ss << (props ? ", divergence identities hold" : ", identities BROKEN");
  }

  r.passed = ok;
  r.detail = ss.str();
  return r;
}

}  // namespace

std::vector<CheckResult> run_validation(const std::string& only) {
  struct Entry {
    const char* name;
    std::function<CheckResult()> fn;
    double budget_seconds;
  };
  const std::vector<Entry> entries = {
      {"fox-h-reduction", check_fox_h_reduction, 1.0},
      {"distribution-suite", check_distribution_suite, 10.0},
      {"sampler-ks", check_sampler_ks, 30.0},
      {"heavy-tail-reduction", check_heavy_tail_reduction, 10.0},
      {"ber-closed-form", check_ber_closed_form, 60.0},
      {"capacity-closed-form", check_capacity_closed_form, 60.0},
      {"diversity-slope", check_diversity_slope, 30.0},
      {"bler-closed-form", check_bler_closed_form, 120.0},
      {"mc-coverage", check_mc_coverage, 300.0},
      {"fit-recovery", check_fit_recovery, 120.0},
  };
  std::vector<CheckResult> results;
  for (const auto& e : entries) {
    if (!only.empty() &&
        std::string(e.name).find(only) == std::string::npos) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = e.fn();
    } catch (const std::exception& ex) {
      r.name = e.name;
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (r.seconds > e.budget_seconds) {
      r.passed = false;
      r.detail += " [over " + std::to_string(e.budget_seconds) +
                  "s budget]";
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace alomax
