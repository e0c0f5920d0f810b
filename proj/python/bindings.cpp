#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schiffer/deformations.hpp"
#include "schiffer/periods.hpp"
#include "schiffer/plot.hpp"
#include "schiffer/scenario.hpp"
#include "schiffer/verify.hpp"

namespace py = pybind11;
using namespace schiffer;

namespace {

std::map<int, Complex> as_dict(const LaurentPoly& p) { return p.coeffs(); }

SlitMapSpec map_from(const std::string& name, int n, int m, double theta) { return make_map(name, n, m, theta); }

py::dict cocycle_dict(const Cocycle& c) {
  py::dict d;
  d["base_order"] = c.base_order;
  d["first"] = as_dict(c.first);
  d["second"] = as_dict(c.second);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Slit maps, deformation cocycles and period/differential expansions";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<NotAvailableError>(m, "NotAvailableError", PyExc_LookupError);
  py::register_exception<InconclusiveError>(m, "InconclusiveError", PyExc_RuntimeError);

  m.def(
      "slit_eval",
      [](const std::string& map, Complex z, int n, int mm, double theta) { return slit_eval(map_from(map, n, mm, theta), z); },
      py::arg("map"), py::arg("z"), py::arg("n") = 3, py::arg("m") = 1, py::arg("theta") = 0.0);
  m.def(
      "slit_invert",
      [](const std::string& map, Complex w, int n, int mm, double theta) {
        return slit_invert(map_from(map, n, mm, theta), w);
      },
      py::arg("map"), py::arg("w"), py::arg("n") = 3, py::arg("m") = 1, py::arg("theta") = 0.0);
  m.def(
      "slit_series",
      [](const std::string& map, int order, int n, int mm, double theta) {
        const EpsSeries s = slit_series(map_from(map, n, mm, theta), order);
        std::vector<std::map<int, Complex>> out;
        for (const auto& t : s.terms()) out.push_back(as_dict(t));
        return out;
      },
      py::arg("map"), py::arg("order") = kDefaultOrder, py::arg("n") = 3, py::arg("m") = 1, py::arg("theta") = 0.0,
      "Coefficients a_0..a_N of eps f(z/eps) as {exponent: coefficient} dicts.");

  m.def(
      "cocycle",
      [](const std::string& name, int n, int mm, double theta) {
        return cocycle_dict(cocycle_extract(case_series(make_case(name, n, mm, theta))));
      },
      py::arg("case"), py::arg("n") = 3, py::arg("m") = 1, py::arg("theta") = 0.0);
  m.def(
      "cocycle_oracle",
      [](const std::string& name, int n, int mm, double theta) {
        return cocycle_dict(cocycle_oracle(make_case(name, n, mm, theta)));
      },
      py::arg("case"), py::arg("n") = 3, py::arg("m") = 1, py::arg("theta") = 0.0);
  m.def(
      "cocycle_numeric",
      [](const std::string& name, Complex z, int n, int mm, double theta, std::vector<double> taus) {
        const CocycleEstimate e = cocycle_numeric(make_case(name, n, mm, theta), z, taus);
        return py::make_tuple(e.first, e.second);
      },
      py::arg("case"), py::arg("z"), py::arg("n") = 3, py::arg("m") = 1, py::arg("theta") = 0.0,
      py::arg("taus") = kDefaultTaus);
  m.def(
      "splitting_orders",
      [](const std::string& name, double eps, int n, int mm, double theta) {
        const SplitReport r = splitting_verify(make_case(name, n, mm, theta), eps);
        return py::make_tuple(r.predicted_orders, r.measured_orders, r.max_boundary_residual());
      },
      py::arg("case"), py::arg("eps") = 0.05, py::arg("n") = 3, py::arg("m") = 1, py::arg("theta") = 0.0);

  m.def("gamma_from_pi", [](const Eigen::MatrixXcd& pi) { return gamma_from_pi(pi).gamma; }, py::arg("pi"));
  m.def("pi_from_gamma", &pi_from_gamma, py::arg("gamma"));
  m.def("wronskian", [](const std::vector<std::vector<Complex>>& coeffs) {
    std::vector<Jet> jets;
    for (const auto& c : coeffs) jets.push_back({Complex{}, c});
    return wronskian(jets);
  });

  m.def(
      "render",
      [](const std::string& map, int n, int mm, double theta, const std::string& format) {
        const PlotData d = plot_curves(map_from(map, n, mm, theta));
        return py::bytes(render(d, format == "pgm" ? PlotFormat::Pgm : PlotFormat::Svg));
      },
      py::arg("map"), py::arg("n") = 5, py::arg("m") = 1, py::arg("theta") = 1.3, py::arg("format") = "svg");

  m.def(
      "run_scenario",
      [](const std::string& text) -> py::dict {
        const Scenario s = parse_scenario(text);
        py::dict d;
        if (const auto* g = std::get_if<GammaScenario>(&s)) {
          const GammaReport r = run_gamma(*g);
          d["order1"] = r.closed.order1;
          d["order2"] = r.closed.order2;
          d["discrepancy"] = r.discrepancy;
          d["pass"] = r.within_tolerance;
        } else if (const auto* o = std::get_if<OmegaScenario>(&s)) {
          const OmegaReport r = run_omega(*o);
          d["terms"] = r.terms;
          d["residuals"] = r.residuals;
          d["slope"] = r.slope;
          d["pass"] = r.within_tolerance;
        } else if (const auto* k = std::get_if<RankScenario>(&s)) {
          const RankReport r = run_rank(*k);
          d["genus"] = r.genus;
          d["rank"] = r.rank;
          d["wronskians"] = r.wronskians;
          d["pass"] = r.matches_expected;
        } else {
          throw ContractError("run_scenario handles gamma, omega and rank scenarios");
        }
        return d;
      },
      py::arg("json_text"));

  m.def("verify_suites", &verify_suites);
  m.def(
      "verify",
      [](const std::string& suite) {
        const VerifyReport r = run_verify(suite);
        std::vector<std::string> lines;
        for (const auto& c : r.results) lines.push_back(format_result(c));
        return py::make_tuple(r.pass(), lines);
      },
      py::arg("suite") = "all");
}
