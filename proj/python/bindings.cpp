#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ivmd/error.hpp"
#include "ivmd/fusion.hpp"
#include "ivmd/implication.hpp"
#include "ivmd/interval.hpp"
#include "ivmd/owa.hpp"
#include "ivmd/selftest.hpp"
#include "ivmd/wd_mean.hpp"

namespace py = pybind11;
using namespace ivmd;

namespace {

using Pair = std::pair<double, double>;
using DeviationArg = std::variant<int, std::string>;
using Cube3 = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<UnitInterval> to_intervals(const std::vector<Pair>& xs) {
  std::vector<UnitInterval> out;
  out.reserve(xs.size());
  for (const auto& [lo, hi] : xs) out.emplace_back(lo, hi);
  return out;
}

Pair to_pair(const UnitInterval& x) { return {x.lower(), x.upper()}; }

ModDevSpec deviation_spec(const DeviationArg& which, double m_p, double m_n) {
  if (const int* c = std::get_if<int>(&which)) return deviation_case(*c, m_p, m_n);
  const auto& name = std::get<std::string>(which);
  if (name == "md1") return md1_spec(m_p, m_n);
  if (name == "md2") return md2_spec(m_p, m_n);
  throw Error(ErrorCode::kConfig, "deviation must be 1..5, 'md1' or 'md2', got '" + name + "'");
}

WdMeanConfig wd_config(const DeviationArg& deviation, double m_p, double m_n, double alpha, double beta,
                       std::vector<double> weights) {
  return {deviation_spec(deviation, m_p, m_n), OrderParams(alpha, beta), std::move(weights)};
}

ProbabilityCube to_cube(const Cube3& a) {
  if (a.ndim() != 3) throw Error(ErrorCode::kShape, "probabilities must be a (samples, sources, classes) array");
  const auto s = static_cast<std::size_t>(a.shape(0)), b = static_cast<std::size_t>(a.shape(1)),
             c = static_cast<std::size_t>(a.shape(2));
  ProbabilityCube cube(s, b, c);
  const double* p = a.data();
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      for (std::size_t k = 0; k < c; ++k) cube.at(i, j, k) = *p++;
    }
  }
  return cube;
}

FusionConfig fusion_config(const std::string& aggregator, const std::string& implication, double m_p, double m_n,
                           double y_width, double alpha, double beta, const std::string& decision) {
  FusionConfig cfg;
  cfg.aggregator = {parse_aggregator(aggregator), m_p, m_n};
  cfg.implication = parse_implication(implication);
  cfg.y_width = y_width;
  cfg.order = OrderParams(alpha, beta);
  cfg.decision = parse_decision(decision);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_ivmd, m) {
  m.doc() = "Interval-valued moderate deviation means and BCI decision fusion";

  py::register_exception<Error>(m, "IvmdError", PyExc_ValueError);

  m.def(
      "k_alpha", [](const Pair& x, double a) { return k_a(UnitInterval(x.first, x.second), a); }, py::arg("interval"),
      py::arg("alpha"), "K_alpha of an interval: lower + alpha * width.");

  m.def(
      "compare",
      [](const Pair& x, const Pair& y, double alpha, double beta) {
        const auto c = cmp_alpha_beta(UnitInterval(x.first, x.second), UnitInterval(y.first, y.second),
                                      OrderParams(alpha, beta));
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
      },
      py::arg("x"), py::arg("y"), py::arg("alpha") = 0.5, py::arg("beta") = 1.0,
      "Lexicographic (K_alpha, K_beta) comparison: -1, 0 or 1.");

  m.def(
      "implication", [](const std::string& kind, double x, double y) { return implication(parse_implication(kind), x, y); },
      py::arg("kind"), py::arg("x"), py::arg("y"));

  m.def(
      "build_interval",
      [](const std::string& kind, double x, double y_width) {
        return to_pair(build_interval(parse_implication(kind), x, y_width));
      },
      py::arg("kind"), py::arg("x"), py::arg("y_width") = kDefaultIntervalWidth,
      "Probability x -> [I(x, y), min(1, I(x, y) + y)].");

  m.def(
      "quantifier_weights", [](double a, double b, std::size_t n) { return quantifier_weights({a, b}, n); },
      py::arg("a"), py::arg("b"), py::arg("n"));

  m.def(
      "iv_owa",
      [](const std::vector<Pair>& xs, const std::vector<double>& w, double alpha, double beta) {
        return to_pair(iv_owa(to_intervals(xs), w, OrderParams(alpha, beta)));
      },
      py::arg("intervals"), py::arg("weights"), py::arg("alpha") = 0.5, py::arg("beta") = 1.0);

  m.def(
      "wd_mean",
      [](const std::vector<Pair>& xs, const DeviationArg& deviation, double m_p, double m_n, double alpha, double beta,
         std::vector<double> weights) {
        return to_pair(wd_mean(to_intervals(xs), wd_config(deviation, m_p, m_n, alpha, beta, std::move(weights))));
      },
      py::arg("intervals"), py::arg("deviation") = 1, py::arg("m_p") = 1.0, py::arg("m_n") = 1.0,
      py::arg("alpha") = 0.5, py::arg("beta") = 1.0, py::arg("weights") = std::vector<double>{},
      "w-preserving interval wD-mean. deviation is a case number 1..5, 'md1' or 'md2'.");

  m.def(
      "bisection_oracle",
      [](const std::vector<Pair>& xs, const DeviationArg& deviation, double m_p, double m_n, double alpha, double beta,
         std::vector<double> weights, double tol) {
        return to_pair(
            bisection_oracle(to_intervals(xs), wd_config(deviation, m_p, m_n, alpha, beta, std::move(weights)), tol));
      },
      py::arg("intervals"), py::arg("deviation") = 1, py::arg("m_p") = 1.0, py::arg("m_n") = 1.0,
      py::arg("alpha") = 0.5, py::arg("beta") = 1.0, py::arg("weights") = std::vector<double>{},
      py::arg("tol") = kDefaultBisectionTol);

  m.def(
      "fuse",
      [](const Cube3& probs, const std::string& aggregator, const std::string& implication, double m_p, double m_n,
         double y_width, double alpha, double beta, const std::string& decision) {
        return fuse_traditional(to_cube(probs),
                                fusion_config(aggregator, implication, m_p, m_n, y_width, alpha, beta, decision));
      },
      py::arg("probabilities"), py::arg("aggregator") = "mean", py::arg("implication") = "lukasiewicz",
      py::arg("m_p") = 1.0, py::arg("m_n") = 1.0, py::arg("y_width") = kDefaultIntervalWidth,
      py::arg("alpha") = 0.5, py::arg("beta") = 1.0, py::arg("decision") = "min",
      "Band fusion of a (samples, bands, classes) probability array; returns class indices.");

  m.def(
      "fuse_mff",
      [](const std::vector<Cube3>& per_classifier, const std::string& aggregator, const std::string& implication,
         double m_p, double m_n, double y_width, double alpha, double beta, const std::string& decision) {
        std::vector<ProbabilityCube> cubes;
        for (const auto& a : per_classifier) cubes.push_back(to_cube(a));
        return fuse_mff(cubes, fusion_config(aggregator, implication, m_p, m_n, y_width, alpha, beta, decision));
      },
      py::arg("probabilities"), py::arg("aggregator") = "mean", py::arg("implication") = "lukasiewicz",
      py::arg("m_p") = 1.0, py::arg("m_n") = 1.0, py::arg("y_width") = kDefaultIntervalWidth,
      py::arg("alpha") = 0.5, py::arg("beta") = 1.0, py::arg("decision") = "min",
      "Two-phase fusion: across bands per classifier, then across classifiers.");

  m.def(
      "selftest",
      [](std::uint64_t seed, int trials) {
        std::ostringstream out;
        const int rc = run_selftest(out, seed, trials);
        return std::make_pair(rc == 0, out.str());
      },
      py::arg("seed") = 1, py::arg("trials") = 200);
}
