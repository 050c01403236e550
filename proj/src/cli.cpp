#include "alomax/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "alomax/distribution.hpp"
#include "alomax/errors.hpp"
#include "alomax/fitting.hpp"
#include "alomax/metrics.hpp"
#include "alomax/montecarlo.hpp"
#include "alomax/sampling.hpp"
#include "alomax/validation.hpp"

namespace alomax::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Shortest decimal representation that round-trips to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

// A sweepable argument: either a single value "v" or "start:step:stop"
// with step > 0, expanded to start + i*step for every point not past stop.
std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::string::size_type pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(pos));
      break;
    }
    parts.push_back(text.substr(pos, colon - pos));
    pos = colon + 1;
  }
  if (parts.size() == 1) {
    return {parse_number(parts[0])};
  }
  if (parts.size() != 3) {
    throw std::invalid_argument("sweep must be 'value' or 'start:step:stop': '" +
                                text + "'");
  }
  const double start = parse_number(parts[0]);
  const double step = parse_number(parts[1]);
  const double stop = parse_number(parts[2]);
  if (!(step > 0.0) || !std::isfinite(step) || stop < start) {
    throw std::invalid_argument("sweep needs step > 0 and stop >= start: '" +
                                text + "'");
  }
  const auto n =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = start + double(i) * step;
  return values;
}

ModulationScheme parse_modulation(const std::string& name) {
  if (name == "bpsk") return ModulationScheme::bpsk();
  if (name == "bfsk") return ModulationScheme::bfsk();
  if (name == "msk") return ModulationScheme::msk();
  throw std::invalid_argument("unknown modulation '" + name +
                              "' (expected bpsk, bfsk, or msk)");
}

Metric parse_metric(const std::string& name) {
  if (name == "op") return Metric::outage;
  if (name == "ber") return Metric::ber;
  if (name == "capacity") return Metric::capacity;
  if (name == "bler") return Metric::bler;
  throw std::invalid_argument("unknown metric '" + name +
                              "' (expected op, ber, capacity, or bler)");
}

void deliver(const std::string& text, const std::string& out_path,
             std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) {
    throw std::invalid_argument("cannot open output file '" + out_path + "'");
  }
  file << text;
}

struct MetricsArgs {
  std::string metric = "op";
  std::string alpha;
  std::string lambda;
  std::string snr_db = "0:2:40";
  double gamma0 = 1.0;
  std::string modulation = "bpsk";
  int n_uses = 100;
  int n_bits = 50;
  std::string out_path;
};

int run_metrics(const MetricsArgs& a, std::ostream& out) {
  const auto alphas = parse_sweep(a.alpha);
  const auto lambdas = parse_sweep(a.lambda);
  const auto snrs = parse_sweep(a.snr_db);

  int swept = 0;
  swept += alphas.size() > 1;
  swept += lambdas.size() > 1;
  swept += snrs.size() > 1;
  if (swept > 1) {
    throw std::invalid_argument(
        "at most one of --alpha, --lambda, --snr-db may sweep; fix the "
        "others to single values");
  }

  std::string swept_name = "snr_db";
  if (alphas.size() > 1) swept_name = "alpha";
  if (lambdas.size() > 1) swept_name = "lambda";
  const std::size_t rows =
      std::max({alphas.size(), lambdas.size(), snrs.size()});

  // Shape parameters are validated for every row before the metric
  // configuration is touched, so a bad pair is reported first.
  std::vector<AlphaLomaxParams> params;
  params.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    params.emplace_back(alphas[alphas.size() > 1 ? i : 0],
                        lambdas[lambdas.size() > 1 ? i : 0]);
  }

  const Metric metric = parse_metric(a.metric);
  std::optional<ModulationScheme> mod;
  std::optional<ShortPacketConfig> packet;
  if (metric == Metric::ber) mod = parse_modulation(a.modulation);
  if (metric == Metric::bler) packet = ShortPacketConfig(a.n_uses, a.n_bits);

  std::ostringstream csv;
  csv << swept_name << ",exact,asymptotic";
  if (metric != Metric::outage) csv << ",fallback";
  csv << "\n";

  for (std::size_t i = 0; i < rows; ++i) {
    const double snr_db = snrs[snrs.size() > 1 ? i : 0];
    const Channel ch(params[i], db_to_linear(snr_db));
    double swept_value = snr_db;
    if (swept_name == "alpha") swept_value = ch.alpha();
    if (swept_name == "lambda") swept_value = ch.lambda();

    double exact = 0.0;
    double asym = 0.0;
    bool fallback = false;
    switch (metric) {
      case Metric::outage:
        exact = outage_probability(ch, a.gamma0);
        asym = outage_asymptotic(ch, a.gamma0).value_at(ch.mean_snr());
        break;
      case Metric::ber: {
        const auto mv = ber_exact(ch, *mod);
        exact = mv.value;
        fallback = mv.used_quadrature_fallback;
        asym = ber_asymptotic(ch, *mod).value_at(ch.mean_snr());
        break;
      }
      case Metric::capacity: {
        const auto mv = capacity_exact(ch);
        exact = mv.value;
        fallback = mv.used_quadrature_fallback;
        asym = capacity_asymptotic(ch);
        break;
      }
      case Metric::bler: {
        const auto mv = bler_exact(ch, *packet);
        exact = mv.value;
        fallback = mv.used_quadrature_fallback;
        try {
          asym = bler_asymptotic(ch, *packet);
        } catch (const alomax::domain_error&) {
          // Below the asymptote's validity threshold; the column still
          // lines up, it just carries no value.
          asym = std::numeric_limits<double>::quiet_NaN();
        }
        break;
      }
    }
    csv << num(swept_value) << ',' << num(exact) << ',' << num(asym);
    if (metric != Metric::outage) csv << ',' << (fallback ? '1' : '0');
    csv << "\n";
  }
  deliver(csv.str(), a.out_path, out);
  return 0;
}

struct EvalArgs {
  bool pdf = false;
  bool cdf = false;
  bool quantile = false;
  std::string alpha;
  std::string lambda;
  double mean_snr_db = 0.0;
  std::string gamma = "0:0.5:20";
  std::string u = "0.05:0.05:0.95";
  std::string out_path;
};

int run_eval(const EvalArgs& a, std::ostream& out) {
  if (int(a.pdf) + int(a.cdf) + int(a.quantile) != 1) {
    throw std::invalid_argument(
        "choose exactly one of --pdf, --cdf, --quantile");
  }
  const AlphaLomaxParams params(parse_number(a.alpha), parse_number(a.lambda));
  const Channel ch(params, db_to_linear(a.mean_snr_db));

  std::ostringstream csv;
  if (a.quantile) {
    csv << "u,quantile\n";
    for (double u : parse_sweep(a.u)) {
      csv << num(u) << ',' << num(snr_quantile(ch, u)) << "\n";
    }
  } else {
    csv << "gamma," << (a.pdf ? "pdf" : "cdf") << "\n";
    for (double g : parse_sweep(a.gamma)) {
      const double v = a.pdf ? snr_pdf(ch, g) : snr_cdf(ch, g);
      csv << num(g) << ',' << num(v) << "\n";
    }
  }
  deliver(csv.str(), a.out_path, out);
  return 0;
}

struct SampleArgs {
  std::string alpha;
  std::string lambda;
  double mean_snr_db = 0.0;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned streams = 1;
  std::string method = "physical";
  std::string out_path;
};

int run_sample(const SampleArgs& a, std::ostream& out) {
  const AlphaLomaxParams params(parse_number(a.alpha), parse_number(a.lambda));
  const Channel ch(params, db_to_linear(a.mean_snr_db));
  SampleBatch batch;
  if (a.method == "physical") {
    batch = sample_physical(ch, a.samples, a.seed, a.streams);
  } else if (a.method == "inverse") {
    batch = sample_inverse(ch, a.samples, a.seed, a.streams);
  } else {
    throw std::invalid_argument("unknown method '" + a.method +
                                "' (expected physical or inverse)");
  }
  std::ostringstream csv;
  csv << "value\n";
  for (double v : batch.values) csv << num(v) << "\n";
  deliver(csv.str(), a.out_path, out);
  return 0;
}

struct SimulateArgs {
  std::string metric = "op";
  std::string alpha;
  std::string lambda;
  std::string snr_db = "0:2:40";
  double gamma0 = 1.0;
  std::string modulation = "bpsk";
  int n_uses = 100;
  int n_bits = 50;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned streams = 1;
  std::string out_path;
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  const AlphaLomaxParams params(parse_number(a.alpha), parse_number(a.lambda));
  const Metric metric = parse_metric(a.metric);
  MetricConfig cfg;
  cfg.gamma0 = a.gamma0;
  if (metric == Metric::ber) cfg.modulation = parse_modulation(a.modulation);
  if (metric == Metric::bler) {
    cfg.short_packet = ShortPacketConfig(a.n_uses, a.n_bits);
  }
  McConfig mc;
  mc.seed = a.seed;
  mc.n_samples = a.samples;
  mc.n_streams = a.streams;

  std::ostringstream csv;
  csv << "snr_db,estimate,std_error,ci95_low,ci95_high\n";
  for (double snr_db : parse_sweep(a.snr_db)) {
    const Channel ch(params, db_to_linear(snr_db));
    const auto est = estimate_metric(metric, ch, cfg, mc);
    csv << num(snr_db) << ',' << num(est.mean) << ',' << num(est.std_error)
        << ',' << num(est.ci95_low) << ',' << num(est.ci95_high) << "\n";
  }
  deliver(csv.str(), a.out_path, out);
  return 0;
}

struct FitArgs {
  std::string input;
  std::string method = "rad";
  std::string domain = "snr";
  std::string out_path;
};

std::vector<double> load_sample_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("cannot open input file '" + path + "'");
  }
  std::string line;
  if (!std::getline(file, line) || line != "value") {
    throw std::invalid_argument(
        "sample input must be a CSV with header 'value'");
  }
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      values.push_back(parse_number(line));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": not a number: '" + line + "'");
    }
  }
  return values;
}

int run_fit(const FitArgs& a, std::ostream& out) {
  FitDomain domain;
  if (a.domain == "snr") {
    domain = FitDomain::snr;
  } else if (a.domain == "envelope") {
    domain = FitDomain::envelope;
  } else {
    throw std::invalid_argument("unknown domain '" + a.domain +
                                "' (expected snr or envelope)");
  }

  FitResult result;
  std::string warning;
  if (a.method == "rad") {
    const EmpiricalPdf data = load_empirical(a.input, &warning);
    result = fit_rad(data, domain);
  } else if (a.method == "mle") {
    result = fit_mle(load_sample_csv(a.input), domain);
  } else {
    throw std::invalid_argument("unknown method '" + a.method +
                                "' (expected rad or mle)");
  }

  nlohmann::json j;
  j["method"] = a.method;
  j["domain"] = a.domain;
  j["alpha"] = result.alpha;
  j["lambda"] = result.lambda;
  j["zeta"] = result.zeta;
  j["scale"] = result.scale;
  j["objective"] = result.objective;
  j["n_evals"] = result.n_evals;
  j["converged"] = result.converged;
  if (!warning.empty()) j["warning"] = warning;
  deliver(j.dump(2) + "\n", a.out_path, out);
  return 0;
}

struct ValidateArgs {
  std::string only;
  bool json = false;
  std::string out_path;
};

int run_validate(const ValidateArgs& a, std::ostream& out) {
  const auto results = run_validation(a.only);
  if (results.empty()) {
    throw std::invalid_argument("no validation check matches '" + a.only +
                                "'");
  }
  bool all_passed = true;
  std::ostringstream text;
  if (a.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name},
                     {"passed", r.passed},
                     {"seconds", r.seconds},
                     {"detail", r.detail}});
      all_passed = all_passed && r.passed;
    }
    text << arr.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      text << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << " ("
           << std::fixed << std::setprecision(2) << r.seconds << "s) "
           << r.detail << "\n";
      all_passed = all_passed && r.passed;
    }
  }
  deliver(text.str(), a.out_path, out);
  return all_passed ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"alpha-Lomax compound fading channel toolkit"};
  app.require_subcommand(1);

  MetricsArgs ma;
  auto* metrics = app.add_subcommand(
      "metrics", "Closed-form performance metrics over a parameter sweep");
  metrics->add_option("--metric", ma.metric, "op, ber, capacity, or bler");
  metrics->add_option("--alpha", ma.alpha, "shape alpha, sweepable")
      ->required();
  metrics->add_option("--lambda", ma.lambda, "shape lambda, sweepable")
      ->required();
  metrics->add_option("--snr-db", ma.snr_db, "mean SNR in dB, sweepable");
  metrics->add_option("--gamma0", ma.gamma0, "outage threshold SNR");
  metrics->add_option("--modulation", ma.modulation, "bpsk, bfsk, or msk");
  metrics->add_option("--n-uses", ma.n_uses, "short-packet channel uses");
  metrics->add_option("--n-bits", ma.n_bits, "short-packet information bits");
  metrics->add_option("--out", ma.out_path, "write CSV to file");

  EvalArgs ea;
  auto* eval = app.add_subcommand(
      "eval", "Evaluate the SNR density, distribution, or quantile");
  eval->add_flag("--pdf", ea.pdf, "tabulate the density");
  eval->add_flag("--cdf", ea.cdf, "tabulate the distribution function");
  eval->add_flag("--quantile", ea.quantile, "tabulate the quantile function");
  eval->add_option("--alpha", ea.alpha, "shape alpha")->required();
  eval->add_option("--lambda", ea.lambda, "shape lambda")->required();
  eval->add_option("--mean-snr-db", ea.mean_snr_db, "mean SNR in dB");
  eval->add_option("--gamma", ea.gamma, "SNR grid, sweepable");
  eval->add_option("--u", ea.u, "probability grid, sweepable");
  eval->add_option("--out", ea.out_path, "write CSV to file");

  SampleArgs sa;
  auto* sample =
      app.add_subcommand("sample", "Draw SNR samples from the channel");
  sample->add_option("--alpha", sa.alpha, "shape alpha")->required();
  sample->add_option("--lambda", sa.lambda, "shape lambda")->required();
  sample->add_option("--mean-snr-db", sa.mean_snr_db, "mean SNR in dB");
  sample->add_option("--samples", sa.samples, "number of draws");
  sample->add_option("--seed", sa.seed, "RNG seed");
  sample->add_option("--streams", sa.streams,
                     "worker threads; never changes the draws");
  sample->add_option("--method", sa.method, "physical or inverse");
  sample->add_option("--out", sa.out_path, "write CSV to file");

  SimulateArgs za;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte-Carlo metric estimates with 95% intervals");
  simulate->add_option("--metric", za.metric, "op, ber, capacity, or bler");
  simulate->add_option("--alpha", za.alpha, "shape alpha")->required();
  simulate->add_option("--lambda", za.lambda, "shape lambda")->required();
  simulate->add_option("--snr-db", za.snr_db, "mean SNR in dB, sweepable");
  simulate->add_option("--gamma0", za.gamma0, "outage threshold SNR");
  simulate->add_option("--modulation", za.modulation, "bpsk, bfsk, or msk");
  simulate->add_option("--n-uses", za.n_uses, "short-packet channel uses");
  simulate->add_option("--n-bits", za.n_bits, "short-packet information bits");
  simulate->add_option("--samples", za.samples, "draws per sweep point");
  simulate->add_option("--seed", za.seed, "RNG seed");
  simulate->add_option("--streams", za.streams,
                       "worker threads; never changes the estimate");
  simulate->add_option("--out", za.out_path, "write CSV to file");

  FitArgs fa;
  auto* fit = app.add_subcommand(
      "fit", "Fit shape and scale parameters to empirical data");
  fit->add_option("--input", fa.input, "CSV input path")->required();
  fit->add_option("--method", fa.method,
                  "rad (binned density) or mle (raw samples)");
  fit->add_option("--domain", fa.domain, "snr or envelope");
  fit->add_option("--out", fa.out_path, "write JSON to file");

  ValidateArgs va;
  auto* validate = app.add_subcommand(
      "validate", "Run the numerical validation suite");
  validate->add_option("--only", va.only, "substring filter on check names");
  validate->add_flag("--json", va.json, "emit JSON instead of text lines");
  validate->add_option("--out", va.out_path, "write report to file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (metrics->parsed()) return run_metrics(ma, out);
    if (eval->parsed()) return run_eval(ea, out);
    if (sample->parsed()) return run_sample(sa, out);
    if (simulate->parsed()) return run_simulate(za, out);
    if (fit->parsed()) return run_fit(fa, out);
    if (validate->parsed()) return run_validate(va, out);
  } catch (const alomax::convergence_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace alomax::cli
