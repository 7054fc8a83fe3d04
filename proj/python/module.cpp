#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bohr/experiment.hpp"

namespace py = pybind11;
using namespace bohr;

namespace {

TruncatedPowerSeries make_series(int dimension, int max_degree,
                                 const std::vector<std::pair<std::vector<int>, Complex>>& terms) {
  std::vector<Term> t;
  t.reserve(terms.size());
  for (const auto& [e, c] : terms) t.push_back({MultiIndex(e), c});
  return TruncatedPowerSeries(dimension, max_degree, std::move(t));
}

std::vector<std::pair<std::vector<int>, Complex>> series_terms(const TruncatedPowerSeries& f) {
  std::vector<std::pair<std::vector<int>, Complex>> out;
  for (const auto& t : f.terms()) out.emplace_back(std::vector<int>(t.index.exponents().begin(), t.index.exponents().end()), t.coefficient);
  return out;
}

SeminormFamily family_of(const std::string& domain, const std::string& mode) {
  const auto d = parse_domain(domain);
  if (mode == "r1") return SeminormFamily::majorant_sup(d);
  if (mode == "r2") return SeminormFamily::termwise_sup(d);
  throw std::invalid_argument("mode must be r1 or r2");
}

}  // namespace

PYBIND11_MODULE(_bohrlab, m) {
  m.doc() = "Bohr radius computations for power series on Reinhardt domains";

  py::class_<TruncatedPowerSeries>(m, "Series")
      .def(py::init(&make_series), py::arg("dimension"), py::arg("max_degree"), py::arg("terms"))
      .def_property_readonly("dimension", &TruncatedPowerSeries::dimension)
      .def_property_readonly("max_degree", &TruncatedPowerSeries::max_degree)
      .def("terms", &series_terms)
      .def("coefficient", [](const TruncatedPowerSeries& f, const std::vector<int>& e) { return f.coefficient(MultiIndex(e)); })
      .def("constant_term", &TruncatedPowerSeries::constant_term)
      .def("__call__", [](const TruncatedPowerSeries& f, const std::vector<Complex>& z) { return eval(f, z); })
      .def("to_text", [](const TruncatedPowerSeries& f) { return to_text(f); })
      .def_static("from_text", [](const std::string& s) { return from_text(s); });

  py::class_<RadiusEstimate>(m, "RadiusEstimate")
      .def_readonly("lower", &RadiusEstimate::lower)
      .def_readonly("upper", &RadiusEstimate::upper)
      .def_readonly("tolerance", &RadiusEstimate::tolerance)
      .def_readonly("witness", &RadiusEstimate::witness)
      .def_readonly("witness_parameter", &RadiusEstimate::witness_parameter)
      .def_readonly("on_boundary", &RadiusEstimate::on_boundary)
      .def_readonly("worst_margin", &RadiusEstimate::worst_margin)
      .def_readonly("violations", &RadiusEstimate::violations)
      .def_readonly("count", &RadiusEstimate::count)
      .def_property_readonly("kind", [](const RadiusEstimate& e) { return to_string(e.kind); })
      .def("__repr__", [](const RadiusEstimate& e) { return "RadiusEstimate(" + to_json(e).dump() + ")"; });

  m.def("mobius_series", &mobius_series, py::arg("alpha"), py::arg("degree"));
  m.def("compose_linear", &compose_linear, py::arg("g"), py::arg("weights"));
  m.def("monomial_sup",
        [](const std::string& domain, const std::vector<int>& alpha, double r) {
          return monomial_sup(parse_domain(domain), MultiIndex(alpha), r);
        },
        py::arg("domain"), py::arg("alpha"), py::arg("r"));
  m.def("hull_distance", [](const std::string& target, Complex w) { return hull_distance(parse_target(target), w); },
        py::arg("target"), py::arg("w"));
  m.def("r1_norm", [](const TruncatedPowerSeries& f, const std::string& domain, double r) {
    return r1_norm(f, parse_domain(domain), r).value;
  }, py::arg("f"), py::arg("domain"), py::arg("r"));
  m.def("r2_norm", [](const TruncatedPowerSeries& f, const std::string& domain, double r) {
    return r2_norm(f, parse_domain(domain), r);
  }, py::arg("f"), py::arg("domain"), py::arg("r"));
  m.def("function_radius",
        [](const TruncatedPowerSeries& f, const std::string& domain, const std::string& target,
           const std::string& mode, double tol) {
          py::gil_scoped_release release;
          return function_radius(f, family_of(domain, mode), parse_target(target), tol);
        },
        py::arg("f"), py::arg("domain") = "lp:inf:1", py::arg("target") = "disk:0,0,1", py::arg("mode") = "r1",
        py::arg("tol") = 1e-6);
  m.def("mobius_infimum",
        [](const std::string& grid, int degree, double tol) {
          py::gil_scoped_release release;
          return family_infimum(mobius_family(parse_alpha_grid(grid), degree), SeminormFamily::majorant_sup(ReinhardtDomain::polydisk(1)),
                                Disk{{}, 1.0}, tol);
        },
        py::arg("grid") = "geometric:200", py::arg("degree") = 60, py::arg("tol") = 1e-6);
  m.def("witness_upper_bound_l1",
        [](int n, const std::string& grid, double tol) {
          py::gil_scoped_release release;
          return witness_upper_bound_l1(n, parse_alpha_grid(grid), tol);
        },
        py::arg("n"), py::arg("grid") = "geometric:200", py::arg("tol") = 1e-6);
  m.def("run_experiment",
        [](const std::string& config_json) {
          const auto config = config_from_json(Json::parse(config_json));
          ExperimentRecord record;
          {
            py::gil_scoped_release release;
            record = run(config);
          }
          return to_json(record).dump();
        },
        py::arg("config_json"));
  m.def("default_config", [] { return to_json(ExperimentConfig{}).dump(); });
  m.attr("__version__") = BOHR_VERSION_STRING;
}
