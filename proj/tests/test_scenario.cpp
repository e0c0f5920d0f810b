#include "doctest.h"

#include <numbers>
#include <string>

#include "schiffer/scenario.hpp"

using namespace schiffer;

namespace {

std::string schema_message(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& text, const std::string& field) {
  return schema_message(text).find("'" + field + "'") != std::string::npos;
}

}  // namespace

TEST_CASE("schema errors name the field") {
  CHECK(mentions("{}", "kind"));
  CHECK(mentions(R"({"kind": "bogus"})", "kind"));
  CHECK(mentions(R"({"kind": "cocycle"})", "case"));
  CHECK(mentions(R"({"kind": "cocycle", "case": "XX"})", "case"));
  CHECK(mentions(R"({"kind": "cocycle", "case": "SS", "taus": [0.1, -1]})", "taus[1]"));
  CHECK(mentions(R"({"kind": "gamma", "omegas": [[1, "x"]]})", "omegas[0][1]"));
  CHECK(mentions(R"({"kind": "gamma", "omegas": [[1]], "m": 0})", "m"));
  CHECK(mentions(R"({"kind": "gamma", "omegas": [[1]], "kernel": {"poly": [[0, 1], [2, 0]]}})", "kernel.poly"));
  CHECK(mentions(R"({"kind": "gamma", "omegas": [[1]], "contours": {"outer": 0.2, "inner": 0.3}})", "contours.inner"));
  CHECK(mentions(R"({"kind": "omega", "n": 1, "q": 1, "r": {"x": 1}})", "r.x"));
  CHECK(mentions(R"({"kind": "omega", "n": 1, "q": 1, "r": {"-1": 1}, "a": 1})", "r"));
  CHECK(mentions(R"({"kind": "omega", "a": 1, "q": 1})", "n"));
  CHECK(mentions(R"({"kind": "rank", "f": [1, 0, 0, 1], "sites": [{"x": 0, "y": 1, "exponents": [0]}]})",
                 "sites[0].exponents[0]"));
  CHECK(mentions(R"({"kind": "rank", "f": [1, 0, 0, 1], "sites": [{"x": 0, "exponents": [1]}]})", "sites[0].y"));
  CHECK(mentions(R"({"kind": "plot", "map": "N", "n": 1})", "map"));
  CHECK(mentions(R"({"kind": "plot", "map": "S", "format": "png"})", "format"));
  CHECK(mentions(R"({"kind": "plot", "map": "S", "grid": {"rays": 1.5}})", "grid.rays"));
  CHECK_THROWS_AS(parse_scenario("{not json"), SchemaError);
}

TEST_CASE("parsed values") {
  const auto s = std::get<GammaScenario>(parse_scenario(R"({"kind": "gamma", "p": [0.1, 0.2], "omegas": [[1, [0, 2]]]})"));
  CHECK(s.p == Complex(0.1, 0.2));
  CHECK(s.a == Complex(1.0));
  REQUIRE(s.omegas.size() == 1);
  CHECK(s.omegas[0].coeff(1) == Complex(0.0, 2.0));
  CHECK(s.omegas[0].base == s.p);

  const auto o = std::get<OmegaScenario>(parse_scenario(R"({"kind": "omega", "n": 2, "q": 0.5, "r": {"-2": [0, 1]}})"));
  CHECK(o.r.coeff(-2) == Complex(0.0, 1.0));
  CHECK(o.samples == 512);

  const auto v = std::get<VerifyScenario>(parse_scenario(R"({"kind": "verify"})"));
  CHECK(v.suite == "all");
}

TEST_CASE("run_gamma") {
  GammaScenario s;
  s.kernel_poly = Eigen::MatrixXcd::Zero(1, 1);
  s.omegas = {Jet{0.0, {1.0, 0.0}}};
  const GammaReport r = run_gamma(s);
  CHECK(std::abs(r.closed.order1(0, 0) - std::numbers::pi * Complex(0.0, 0.5)) < 1e-14);
  CHECK(r.discrepancy < 1e-12);
  CHECK(r.within_tolerance);

  s.a = 0.0;
  s.b = 0.0;
  const GammaReport z = run_gamma(s);
  CHECK(z.closed.order1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.contour.order2.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("run_rank") {
  RankScenario s;
  s.f = {1.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  s.sites = {{0.0, 1.0, {1, 2, 3}}};
  s.expected_rank = 3;
  const RankReport r = run_rank(s);
  CHECK(r.genus == 2);
  CHECK(r.rank == 3);
  CHECK(r.matches_expected);
  CHECK(r.matrix.rows() == 3);
  CHECK(r.matrix.cols() == 3);
}
