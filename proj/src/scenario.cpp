#include "schiffer/scenario.hpp"

#include <cmath>
#include <fstream>
#include "json.hpp"
#include <sstream>

namespace schiffer {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError("field '" + path + "': " + what);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path + key, "missing");
  return j.at(key);
}

Complex to_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(path, "expected a number or a [re, im] pair");
}

std::vector<Complex> to_complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_complex(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

double to_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int to_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double positive(const json& j, const std::string& path) {
  const double v = to_double(j, path);
  if (!(v > 0.0)) fail(path, "must be positive");
  return v;
}

template <class T, class F>
T optional_field(const json& j, const std::string& key, T fallback, F convert, const std::string& path) {
  if (!j.contains(key)) return fallback;
  return convert(j.at(key), path + key);
}

Eigen::MatrixXcd parse_kernel(const json& root) {
  if (!root.contains("kernel")) return Eigen::MatrixXcd::Zero(1, 1);
  const json& k = root.at("kernel");
  if (!k.is_object()) fail("kernel", "expected an object");
  if (!k.contains("poly")) return Eigen::MatrixXcd::Zero(1, 1);
  const json& p = k.at("poly");
  if (!p.is_array() || p.empty()) fail("kernel.poly", "expected a non-empty square matrix");
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string row = "kernel.poly[" + std::to_string(i) + "]";
    const auto entries = to_complex_list(p[static_cast<std::size_t>(i)], row);
    if (static_cast<Eigen::Index>(entries.size()) != n) fail(row, "matrix must be square");
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = entries[static_cast<std::size_t>(j)];
  }
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-14) fail("kernel.poly", "matrix must be symmetric");
  return g;
}

DeformationCase case_from(const json& j) {
  const json& c = require(j, "case", "");
  if (!c.is_string()) fail("case", "expected a string");
  try {
    return make_case(c.get<std::string>(), optional_field(j, "n", 3, to_int, ""), optional_field(j, "m", 1, to_int, ""),
                     optional_field(j, "theta", 0.0, to_double, ""));
  } catch (const SchemaError&) {
    throw;
  } catch (const ContractError& e) {
    fail("case", e.what());
  }
}

CocycleScenario parse_cocycle(const json& j) {
  CocycleScenario s;
  s.deformation = case_from(j);
  if (j.contains("points")) s.points = to_complex_list(j.at("points"), "points");
  if (j.contains("taus")) {
    const json& t = j.at("taus");
    if (!t.is_array()) fail("taus", "expected a list of numbers");
    s.taus.clear();
    for (std::size_t i = 0; i < t.size(); ++i) s.taus.push_back(positive(t[i], "taus[" + std::to_string(i) + "]"));
  }
  return s;
}

GammaScenario parse_gamma(const json& j) {
  GammaScenario s;
  s.p = optional_field(j, "p", Complex{}, to_complex, "");
  s.a = optional_field(j, "a", Complex{1.0}, to_complex, "");
  s.b = optional_field(j, "b", Complex{}, to_complex, "");
  s.m = optional_field(j, "m", 1, to_int, "");
  if (s.m < 1) fail("m", "must be >= 1");
  s.kernel_poly = parse_kernel(j);
  const json& om = require(j, "omegas", "");
  if (!om.is_array() || om.empty()) fail("omegas", "expected a non-empty list of coefficient lists");
  for (std::size_t i = 0; i < om.size(); ++i) {
    auto coeffs = to_complex_list(om[i], "omegas[" + std::to_string(i) + "]");
    if (coeffs.empty()) fail("omegas[" + std::to_string(i) + "]", "needs at least one coefficient");
    s.omegas.push_back({s.p, std::move(coeffs)});
  }
  if (j.contains("contours")) {
    const json& c = j.at("contours");
    s.outer_radius = optional_field(c, "outer", s.outer_radius, positive, "contours.");
    s.inner_radius = optional_field(c, "inner", s.inner_radius, positive, "contours.");
    s.samples = optional_field(c, "samples", s.samples, to_int, "contours.");
    if (!(s.inner_radius < s.outer_radius)) fail("contours.inner", "must be smaller than contours.outer");
  }
  s.tol = optional_field(j, "tol", s.tol, positive, "");
  return s;
}

LaurentPoly parse_laurent(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object mapping exponents to [re, im]");
  std::map<int, Complex> coeffs;
  for (const auto& [key, value] : j.items()) {
    int e = 0;
    try {
      std::size_t used = 0;
      e = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(path + "." + key, "exponent keys must be integers");
    }
    coeffs[e] = to_complex(value, path + "." + key);
  }
  return LaurentPoly(coeffs);
}

OmegaScenario parse_omega(const json& j) {
  OmegaScenario s;
  s.p = optional_field(j, "p", Complex{}, to_complex, "");
  s.kernel_poly = parse_kernel(j);
  auto coeffs = j.contains("omega") ? to_complex_list(j.at("omega"), "omega") : std::vector<Complex>{1.0};
  if (coeffs.empty()) fail("omega", "needs at least one coefficient");
  s.omega = {s.p, std::move(coeffs)};
  if (j.contains("r") && j.contains("a")) fail("r", "give either 'r' or 'a', not both");
  if (j.contains("r")) {
    s.r = parse_laurent(j.at("r"), "r");
  } else {
    s.r = LaurentPoly::monomial(to_complex(require(j, "a", ""), "a"), -1);
  }
  s.n = to_int(require(j, "n", ""), "n");
  if (s.n < 0) fail("n", "must be non-negative");
  s.rho0 = optional_field(j, "rho0", s.rho0, positive, "");
  s.samples = optional_field(j, "samples", s.samples, to_int, "");
  s.q = to_complex(require(j, "q", ""), "q");
  if (j.contains("eps")) {
    const json& e = j.at("eps");
    if (!e.is_array()) fail("eps", "expected a list of numbers");
    for (std::size_t i = 0; i < e.size(); ++i) s.eps.push_back(positive(e[i], "eps[" + std::to_string(i) + "]"));
  }
  s.tol = optional_field(j, "tol", s.tol, positive, "");
  return s;
}

RankScenario parse_rank(const json& j) {
  RankScenario s;
  s.f = to_complex_list(require(j, "f", ""), "f");
  const json& sites = require(j, "sites", "");
  if (!sites.is_array() || sites.empty()) fail("sites", "expected a non-empty list");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const std::string path = "sites[" + std::to_string(i) + "].";
    RankSite site;
    site.x = to_complex(require(sites[i], "x", path), path + "x");
    site.y = to_complex(require(sites[i], "y", path), path + "y");
    const json& ex = require(sites[i], "exponents", path);
    if (!ex.is_array() || ex.empty()) fail(path + "exponents", "expected a non-empty list of integers");
    for (std::size_t k = 0; k < ex.size(); ++k) {
      const int e = to_int(ex[k], path + "exponents[" + std::to_string(k) + "]");
      if (e < 1) fail(path + "exponents[" + std::to_string(k) + "]", "must be >= 1");
      site.exponents.push_back(e);
    }
    s.sites.push_back(std::move(site));
  }
  s.depth = optional_field(j, "depth", s.depth, to_int, "");
  if (j.contains("expected_rank")) s.expected_rank = to_int(j.at("expected_rank"), "expected_rank");
  return s;
}

PlotScenario parse_plot(const json& j) {
  PlotScenario s;
  const json& name = require(j, "map", "");
  if (!name.is_string()) fail("map", "expected a string");
  try {
    s.map = make_map(name.get<std::string>(), optional_field(j, "n", 5, to_int, ""), optional_field(j, "m", 1, to_int, ""),
                     optional_field(j, "theta", 0.0, to_double, ""));
  } catch (const SchemaError&) {
    throw;
  } catch (const ContractError& e) {
    fail("map", e.what());
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    s.options.rays = optional_field(g, "rays", s.options.rays, to_int, "grid.");
    s.options.circles = optional_field(g, "circles", s.options.circles, to_int, "grid.");
    s.options.samples = optional_field(g, "samples", s.options.samples, to_int, "grid.");
    s.options.r_min = optional_field(g, "r_min", s.options.r_min, to_double, "grid.");
    s.options.r_max = optional_field(g, "r_max", s.options.r_max, to_double, "grid.");
  }
  if (j.contains("format")) {
    const json& f = j.at("format");
    if (f == "svg") {
      s.format = PlotFormat::Svg;
    } else if (f == "pgm") {
      s.format = PlotFormat::Pgm;
    } else {
      fail("format", "expected \"svg\" or \"pgm\"");
    }
  }
  if (j.contains("out")) {
    if (!j.at("out").is_string()) fail("out", "expected a path string");
    s.out = j.at("out").get<std::string>();
  }
  return s;
}

}  // namespace

DeformationCase make_case(const std::string& name, int n, int m, double theta) {
  DeformationCase c;
  if (name == "SS") {
    c = deform::SS{};
  } else if (name == "NN") {
    c = deform::NN{n};
  } else if (name == "SP") {
    c = deform::SP{};
  } else if (name == "SQ") {
    c = deform::SQ{m, n};
  } else if (name == "SK") {
    c = deform::SK{theta};
  } else {
    throw ContractError("unknown case '" + name + "' (expected SS, NN, SP, SQ or SK)");
  }
  natural_order(c);
  return c;
}

SlitMapSpec make_map(const std::string& name, int n, int m, double theta) {
  SlitMapSpec s;
  if (name == "S") {
    s = slit::S{};
  } else if (name == "N") {
    s = slit::N{n};
  } else if (name == "P") {
    s = slit::P{};
  } else if (name == "K") {
    s = slit::K{theta};
  } else if (name == "Q") {
    s = slit::Q{m, n};
  } else {
    throw ContractError("unknown map '" + name + "' (expected S, N, P, K or Q)");
  }
  validate(s);
  return s;
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("scenario must be a JSON object");
  const json& kind = require(j, "kind", "");
  if (!kind.is_string()) fail("kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "cocycle") return parse_cocycle(j);
  if (k == "gamma") return parse_gamma(j);
  if (k == "omega") return parse_omega(j);
  if (k == "rank") return parse_rank(j);
  if (k == "plot") return parse_plot(j);
  if (k == "verify") {
    VerifyScenario v;
    if (j.contains("suite")) {
      if (!j.at("suite").is_string()) fail("suite", "expected a string");
      v.suite = j.at("suite").get<std::string>();
    }
    return v;
  }
  fail("kind", "unknown kind '" + k + "' (expected cocycle, gamma, omega, rank, plot or verify)");
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str());
}

GammaReport run_gamma(const GammaScenario& s) {
  const KernelModel kernel = polynomial_kernel(s.kernel_poly);
  GammaReport r;
  r.lambda = kernel.reg(s.p);
  DifferentialJets jets{s.p, s.omegas, r.lambda, std::nullopt};
  // Pad jets so the closed form sees the coefficients it needs.
  for (auto& j : jets.omegas) {
    if (j.depth() < std::max(1, s.m - 1)) j.coeffs.resize(static_cast<std::size_t>(std::max(1, s.m - 1)) + 1);
  }
  r.closed = gamma_update_closed(s.a, s.b, s.m, jets);
  r.contour = gamma_update_contour(DifferentialFns::from_jets(jets.omegas), kernel, s.p,
                                   LaurentPoly::monomial(s.a, -1), LaurentPoly::monomial(s.b, -s.m),
                                   Contour(s.p, s.outer_radius, s.samples), Contour(s.p, s.inner_radius, s.samples));
  r.discrepancy = std::max((r.closed.order1 - r.contour.order1).cwiseAbs().maxCoeff(),
                           (r.closed.order2 - r.contour.order2).cwiseAbs().maxCoeff());
  r.within_tolerance = r.discrepancy <= s.tol;
  return r;
}

OmegaReport run_omega(const OmegaScenario& s) {
  const KernelModel kernel = polynomial_kernel(s.kernel_poly);
  const Jet omega = s.omega;
  const auto expansion =
      omega_expansion(kernel, [omega](Complex z) { return omega(z); }, s.r, s.n, Contour(s.p, s.rho0, s.samples), s.q);
  OmegaReport out;
  out.terms = expansion.terms;
  out.eps = s.eps;
  for (double e : s.eps) out.residuals.push_back(std::abs(expansion.residual(e)));
  if (s.eps.size() >= 2) {
    bool positive_values = true;
    for (double v : out.residuals) positive_values = positive_values && v > 0.0;
    if (positive_values) out.slope = loglog_slope(out.eps, out.residuals);
  }
  const auto& coeffs = s.r.coeffs();
  if (coeffs.size() == 1 && coeffs.begin()->first == -1) {
    Jet padded = s.omega;
    if (padded.depth() < 1) padded.coeffs.resize(2);
    out.closed = omega_variation_closed(coeffs.begin()->second, padded, kernel.reg(s.p), kernel, s.q);
    double worst = 0.0;
    if (s.n >= 1) worst = std::max(worst, std::abs(out.closed->first - out.terms[1]));
    if (s.n >= 2) worst = std::max(worst, std::abs(out.closed->second - out.terms[2]));
    out.closed_discrepancy = worst;
    out.within_tolerance = worst <= s.tol;
  }
  return out;
}

RankReport run_rank(const RankScenario& s) {
  RankReport r;
  r.genus = hyperelliptic_genus(s.f);
  int depth = std::max(s.depth, r.genus - 1);
  for (const auto& site : s.sites) {
    for (int e : site.exponents) depth = std::max(depth, e - 1);
  }
  std::vector<SchifferSite> sites;
  std::vector<std::vector<Jet>> per_site;
  for (const auto& site : s.sites) {
    sites.push_back({site.x, site.exponents});
    per_site.push_back(hyperelliptic_quadratic_jets(s.f, site.x, site.y, depth));
    r.wronskians.push_back(wronskian(hyperelliptic_jets(s.f, site.x, site.y, depth)));
  }
  std::vector<std::vector<Jet>> jets(per_site.front().size());
  for (std::size_t phi = 0; phi < jets.size(); ++phi) {
    for (const auto& site_jets : per_site) jets[phi].push_back(site_jets[phi]);
  }
  r.matrix = schiffer_pairing_matrix(sites, jets);
  r.rank = schiffer_rank(sites, jets);
  r.matches_expected = !s.expected_rank || *s.expected_rank == r.rank;
  return r;
}

}  // namespace schiffer
