#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "alomax/distribution.hpp"
#include "alomax/fitting.hpp"
#include "alomax/metrics.hpp"
#include "alomax/montecarlo.hpp"
#include "alomax/sampling.hpp"

namespace py = pybind11;

namespace {

// Hands the sample buffer to numpy without copying.
py::array_t<double> take_array(std::vector<double>&& values) {
  auto* holder = new std::vector<double>(std::move(values));
  py::capsule owner(holder, [](void* p) {
    delete static_cast<std::vector<double>*>(p);
  });
  return py::array_t<double>({holder->size()}, {sizeof(double)},
                             holder->data(), owner);
}

}  // namespace

PYBIND11_MODULE(_alomax, m) {
  m.doc() = "alpha-Lomax compound fading channel model";

  py::class_<alomax::AlphaLomaxParams>(m, "AlphaLomaxParams")
      .def(py::init<double, double>(), py::arg("alpha"), py::arg("lambda"))
      .def_property_readonly("alpha", &alomax::AlphaLomaxParams::alpha)
      .def_property_readonly("lambda_", &alomax::AlphaLomaxParams::lambda)
      .def_property_readonly("zeta", &alomax::AlphaLomaxParams::zeta)
      .def_property_readonly("log_zeta", &alomax::AlphaLomaxParams::log_zeta);

  py::class_<alomax::Channel>(m, "Channel")
      .def(py::init<const alomax::AlphaLomaxParams&, double>(),
           py::arg("params"), py::arg("mean_snr"))
      .def_property_readonly("params", &alomax::Channel::params)
      .def_property_readonly("mean_snr", &alomax::Channel::mean_snr)
      .def_property_readonly("alpha", &alomax::Channel::alpha)
      .def_property_readonly("lambda_", &alomax::Channel::lambda)
      .def_property_readonly("zeta", &alomax::Channel::zeta);

  m.def("snr_pdf",
        py::vectorize([](alomax::Channel& ch, double g) {
          return alomax::snr_pdf(ch, g);
        }),
        py::arg("channel"), py::arg("gamma"));
  m.def("snr_cdf",
        py::vectorize([](alomax::Channel& ch, double g) {
          return alomax::snr_cdf(ch, g);
        }),
        py::arg("channel"), py::arg("gamma"));
  m.def("snr_quantile",
        py::vectorize([](alomax::Channel& ch, double u) {
          return alomax::snr_quantile(ch, u);
        }),
        py::arg("channel"), py::arg("u"));
  m.def("snr_moment", &alomax::snr_moment, py::arg("channel"), py::arg("n"));
  m.def("snr_mode", &alomax::snr_mode, py::arg("channel"));
  m.def("gmgf", &alomax::gmgf, py::arg("channel"), py::arg("n"),
        py::arg("s"));

  py::class_<alomax::ModulationScheme>(m, "ModulationScheme")
      .def_static("bpsk", &alomax::ModulationScheme::bpsk)
      .def_static("bfsk", &alomax::ModulationScheme::bfsk)
      .def_static("msk", &alomax::ModulationScheme::msk)
      .def_static("custom", &alomax::ModulationScheme::custom, py::arg("phi"))
      .def_property_readonly("name", &alomax::ModulationScheme::name)
      .def_property_readonly("phi", &alomax::ModulationScheme::phi);

  py::class_<alomax::ShortPacketConfig>(m, "ShortPacketConfig")
      .def(py::init<int, int>(), py::arg("n_uses"), py::arg("n_bits"))
      .def_property_readonly("n_uses", &alomax::ShortPacketConfig::n_uses)
      .def_property_readonly("n_bits", &alomax::ShortPacketConfig::n_bits)
      .def_property_readonly("eta", &alomax::ShortPacketConfig::eta)
      .def_property_readonly("delta", &alomax::ShortPacketConfig::delta)
      .def_property_readonly("mu", &alomax::ShortPacketConfig::mu)
      .def_property_readonly("upsilon", &alomax::ShortPacketConfig::upsilon);

  py::class_<alomax::AsymptoteResult>(m, "AsymptoteResult")
      .def_readonly("coding_gain", &alomax::AsymptoteResult::coding_gain)
      .def_readonly("diversity_gain", &alomax::AsymptoteResult::diversity_gain)
      .def("value_at", &alomax::AsymptoteResult::value_at,
           py::arg("mean_snr"));

  py::class_<alomax::MetricValue>(m, "MetricValue")
      .def_readonly("value", &alomax::MetricValue::value)
      .def_readonly("used_quadrature_fallback",
                    &alomax::MetricValue::used_quadrature_fallback);

  py::enum_<alomax::Metric>(m, "Metric")
      .value("outage", alomax::Metric::outage)
      .value("ber", alomax::Metric::ber)
      .value("capacity", alomax::Metric::capacity)
      .value("bler", alomax::Metric::bler);

  py::class_<alomax::MetricConfig>(m, "MetricConfig")
      .def(py::init<>())
      .def_readwrite("gamma0", &alomax::MetricConfig::gamma0)
      .def_readwrite("modulation", &alomax::MetricConfig::modulation)
      .def_readwrite("short_packet", &alomax::MetricConfig::short_packet);

  m.def("outage_probability",
        py::overload_cast<const alomax::Channel&, double>(
            &alomax::outage_probability),
        py::arg("channel"), py::arg("gamma0"));
  m.def("outage_asymptotic", &alomax::outage_asymptotic, py::arg("channel"),
        py::arg("gamma0"));
  m.def("ber_exact", &alomax::ber_exact, py::arg("channel"),
        py::arg("modulation"));
  m.def("ber_asymptotic", &alomax::ber_asymptotic, py::arg("channel"),
        py::arg("modulation"));
  m.def("capacity_exact", &alomax::capacity_exact, py::arg("channel"));
  m.def("capacity_asymptotic", &alomax::capacity_asymptotic,
        py::arg("channel"));
  m.def("bler_linearized", &alomax::bler_linearized, py::arg("gamma"),
        py::arg("config"));
  m.def("bler_exact", &alomax::bler_exact, py::arg("channel"),
        py::arg("config"));
  m.def("bler_asymptotic", &alomax::bler_asymptotic, py::arg("channel"),
        py::arg("config"));
  m.def("quadrature_reference", &alomax::quadrature_reference,
        py::arg("metric"), py::arg("channel"), py::arg("config"));

  m.def(
      "sample_physical",
      [](const alomax::Channel& ch, std::size_t count, std::uint64_t seed,
         unsigned n_threads) {
        return take_array(
            std::move(alomax::sample_physical(ch, count, seed, n_threads)
                          .values));
      },
      py::arg("channel"), py::arg("count"), py::arg("seed") = 1,
      py::arg("n_threads") = 1);
  m.def(
      "sample_inverse",
      [](const alomax::Channel& ch, std::size_t count, std::uint64_t seed,
         unsigned n_threads) {
        return take_array(
            std::move(alomax::sample_inverse(ch, count, seed, n_threads)
                          .values));
      },
      py::arg("channel"), py::arg("count"), py::arg("seed") = 1,
      py::arg("n_threads") = 1);

  py::class_<alomax::McConfig>(m, "McConfig")
      .def(py::init<>())
      .def_readwrite("seed", &alomax::McConfig::seed)
      .def_readwrite("n_samples", &alomax::McConfig::n_samples)
      .def_readwrite("n_streams", &alomax::McConfig::n_streams);

  py::class_<alomax::Estimate>(m, "Estimate")
      .def_readonly("mean", &alomax::Estimate::mean)
      .def_readonly("std_error", &alomax::Estimate::std_error)
      .def_readonly("ci95_low", &alomax::Estimate::ci95_low)
      .def_readonly("ci95_high", &alomax::Estimate::ci95_high)
      .def_readonly("n_used", &alomax::Estimate::n_used);

  m.def("estimate_metric", &alomax::estimate_metric, py::arg("metric"),
        py::arg("channel"), py::arg("config"), py::arg("mc"));

  py::class_<alomax::EmpiricalPdf>(m, "EmpiricalPdf")
      .def(py::init<>())
      .def_readwrite("centers", &alomax::EmpiricalPdf::centers)
      .def_readwrite("densities", &alomax::EmpiricalPdf::densities)
      .def_readwrite("widths", &alomax::EmpiricalPdf::widths);

  py::enum_<alomax::FitDomain>(m, "FitDomain")
      .value("snr", alomax::FitDomain::snr)
      .value("envelope", alomax::FitDomain::envelope);

  py::class_<alomax::FitResult>(m, "FitResult")
      .def_readonly("alpha", &alomax::FitResult::alpha)
      .def_readonly("lambda_", &alomax::FitResult::lambda)
      .def_readonly("zeta", &alomax::FitResult::zeta)
      .def_readonly("scale", &alomax::FitResult::scale)
      .def_readonly("objective", &alomax::FitResult::objective)
      .def_readonly("n_evals", &alomax::FitResult::n_evals)
      .def_readonly("converged", &alomax::FitResult::converged);

  m.def(
      "load_empirical",
      [](const std::string& path) {
        std::string warning;
        auto data = alomax::load_empirical(path, &warning);
        return py::make_tuple(std::move(data), warning);
      },
      py::arg("path"));
  m.def("kl_divergence", &alomax::kl_divergence, py::arg("empirical"),
        py::arg("model_densities"));
  m.def("resistor_average", &alomax::resistor_average, py::arg("kl_pq"),
        py::arg("kl_qp"));
  m.def(
      "fit_rad",
      [](const alomax::EmpiricalPdf& data, alomax::FitDomain domain) {
        return alomax::fit_rad(data, domain);
      },
      py::arg("data"), py::arg("domain"));
  m.def(
      "fit_mle",
      [](const std::vector<double>& samples, alomax::FitDomain domain) {
        return alomax::fit_mle(samples, domain);
      },
      py::arg("samples"), py::arg("domain"));
}
