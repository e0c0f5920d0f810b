#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "schiffer/deformations.hpp"
#include "schiffer/scenario.hpp"
#include "schiffer/verify.hpp"

using json = nlohmann::ordered_json;
using namespace schiffer;

namespace {

enum Exit { kOk = 0, kUsage = 1, kTolerance = 2, kConvergence = 3 };

struct Globals {
  std::optional<double> tol;
  std::string out;
  std::string format = "text";
};

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const LaurentPoly& p) {
  json j = json::object();
  for (const auto& [k, c] : p.coeffs()) j[std::to_string(k)] = to_json(c);
  return j;
}

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(Complex c) {
  if (c.imag() == 0.0) return num(c.real());
  return "(" + num(c.real()) + (c.imag() < 0 ? " - " : " + ") + num(std::abs(c.imag())) + "i)";
}

std::string matrix_text(const Eigen::MatrixXcd& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += "  [";
    for (Eigen::Index k = 0; k < m.cols(); ++k) s += (k ? ", " : "") + num(m(i, k));
    s += "]\n";
  }
  return s;
}

void emit(const Globals& g, const json& j, const std::string& text) {
  const std::string body = g.format == "json" ? j.dump(2) + "\n" : text;
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw SchemaError("cannot write '" + g.out + "'");
  f << body;
}

template <class T>
T scenario_as(const std::string& path, const char* kind) {
  Scenario s = load_scenario(path);
  if (auto* v = std::get_if<T>(&s)) return *v;
  throw SchemaError(std::string("field 'kind': expected '") + kind + "' for this subcommand");
}

// ---------------------------------------------------------------- cocycle

struct CocycleArgs {
  std::string scenario;
  std::string name = "SS";
  int n = 3;
  int m = 1;
  double theta = 0.0;
  std::vector<std::string> points;
};

Complex parse_point(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char sep = 0;
  in >> re;
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) throw SchemaError("point '" + s + "': expected RE or RE,IM");
  }
  if (in.fail() && !in.eof()) throw SchemaError("point '" + s + "': expected RE or RE,IM");
  return {re, im};
}

int run_cocycle(const Globals& g, const CocycleArgs& a) {
  CocycleScenario sc;
  if (!a.scenario.empty()) {
    sc = scenario_as<CocycleScenario>(a.scenario, "cocycle");
  } else {
    sc.deformation = make_case(a.name, a.n, a.m, a.theta);
    for (const auto& p : a.points) sc.points.push_back(parse_point(p));
  }
  const double tol = g.tol.value_or(1e-6);
  const Cocycle sym = cocycle_extract(case_series(sc.deformation));
  std::optional<Cocycle> oracle;
  try {
    oracle = cocycle_oracle(sc.deformation);
  } catch (const NotAvailableError&) {
  }

  json j;
  j["case"] = describe(sc.deformation);
  j["base_order"] = sym.base_order;
  j["first"] = to_json(sym.first);
  j["second"] = to_json(sym.second);
  std::string text = describe(sc.deformation) + "  (tau = eps^" + std::to_string(sym.base_order) + ")\n";
  text += "first:  " + sym.first.str("w") + "\n";
  text += "second: " + sym.second.str("w") + "\n";

  bool ok = true;
  if (oracle) {
    const double err = std::max(max_coeff_diff(sym.first, oracle->first), max_coeff_diff(sym.second, oracle->second));
    ok = ok && err <= tol && sym.base_order == oracle->base_order;
    j["oracle"] = {{"first", to_json(oracle->first)}, {"second", to_json(oracle->second)}, {"error", err}};
    text += "oracle: first " + oracle->first.str("w") + ", second " + oracle->second.str("w") + " (error " +
            num(err) + ")\n";
  } else {
    j["oracle"] = nullptr;
    text += "oracle: not available\n";
  }

  json pts = json::array();
  for (Complex z : sc.points) {
    const CocycleEstimate est = cocycle_numeric(sc.deformation, z, sc.taus);
    const Complex f1 = sym.first(z), f2 = sym.second(z);
    const double dev = std::max(std::abs(est.first - f1), std::abs(est.second - f2));
    ok = ok && dev <= tol;
    pts.push_back({{"w", to_json(z)},
                   {"first", to_json(est.first)},
                   {"second", to_json(est.second)},
                   {"first_error", est.first_error},
                   {"second_error", est.second_error},
                   {"deviation", dev}});
    text += "w = " + num(z) + ": first " + num(est.first) + ", second " + num(est.second) + " (deviation " +
            num(dev) + ")\n";
  }
  j["points"] = pts;
  j["pass"] = ok;
  text += ok ? "PASS\n" : "FAIL\n";
  emit(g, j, text);
  return ok ? kOk : kTolerance;
}

// ---------------------------------------------------------------- gamma, omega, rank

int run_gamma_cmd(const Globals& g, const std::string& path) {
  GammaScenario sc = scenario_as<GammaScenario>(path, "gamma");
  if (g.tol) sc.tol = *g.tol;
  const GammaReport r = run_gamma(sc);
  json j;
  j["lambda"] = to_json(r.lambda);
  j["closed"] = {{"order1", to_json(r.closed.order1)}, {"order2", to_json(r.closed.order2)}};
  j["contour"] = {{"order1", to_json(r.contour.order1)}, {"order2", to_json(r.contour.order2)}};
  j["discrepancy"] = r.discrepancy;
  j["tol"] = sc.tol;
  j["pass"] = r.within_tolerance;
  std::string text = "lambda(p) = " + num(r.lambda) + "\n";
  text += "order1 (closed):\n" + matrix_text(r.closed.order1);
  text += "order2 (closed):\n" + matrix_text(r.closed.order2);
  text += "path discrepancy " + num(r.discrepancy) + " (tol " + num(sc.tol) + ")\n";
  text += r.within_tolerance ? "PASS\n" : "FAIL\n";
  emit(g, j, text);
  return r.within_tolerance ? kOk : kTolerance;
}

int run_omega_cmd(const Globals& g, const std::string& path) {
  OmegaScenario sc = scenario_as<OmegaScenario>(path, "omega");
  if (g.tol) sc.tol = *g.tol;
  const OmegaReport r = run_omega(sc);
  json j;
  json terms = json::array();
  for (Complex t : r.terms) terms.push_back(to_json(t));
  j["terms"] = terms;
  j["eps"] = r.eps;
  j["residuals"] = r.residuals;
  j["slope"] = r.slope ? json(*r.slope) : json(nullptr);
  if (r.closed) {
    j["closed"] = {to_json(r.closed->first), to_json(r.closed->second)};
    j["closed_discrepancy"] = r.closed_discrepancy;
  } else {
    j["closed"] = nullptr;
  }
  j["pass"] = r.within_tolerance;
  std::string text;
  for (std::size_t k = 0; k < r.terms.size(); ++k) text += "omega^(" + std::to_string(k) + ")(q) = " + num(r.terms[k]) + "\n";
  for (std::size_t k = 0; k < r.eps.size(); ++k) text += "eps " + num(r.eps[k]) + ": residual " + num(r.residuals[k]) + "\n";
  if (r.slope) text += "log-log slope " + num(*r.slope) + "\n";
  if (r.closed) text += "closed-form discrepancy " + num(r.closed_discrepancy) + "\n";
  text += r.within_tolerance ? "PASS\n" : "FAIL\n";
  emit(g, j, text);
  return r.within_tolerance ? kOk : kTolerance;
}

int run_rank_cmd(const Globals& g, const std::string& path) {
  const RankScenario sc = scenario_as<RankScenario>(path, "rank");
  const RankReport r = run_rank(sc);
  json j;
  j["genus"] = r.genus;
  j["rank"] = r.rank;
  j["matrix"] = to_json(r.matrix);
  json w = json::array();
  for (Complex c : r.wronskians) w.push_back(to_json(c));
  j["wronskians"] = w;
  j["expected_rank"] = sc.expected_rank ? json(*sc.expected_rank) : json(nullptr);
  j["pass"] = r.matches_expected;
  std::string text = "genus " + std::to_string(r.genus) + ", rank " + std::to_string(r.rank) + "\n";
  text += "pairing matrix:\n" + matrix_text(r.matrix);
  for (std::size_t k = 0; k < r.wronskians.size(); ++k) {
    text += "Wronskian at site " + std::to_string(k) + ": " + num(r.wronskians[k]) + "\n";
  }
  text += r.matches_expected ? "PASS\n" : "FAIL\n";
  emit(g, j, text);
  return r.matches_expected ? kOk : kTolerance;
}

// ---------------------------------------------------------------- plot

struct PlotArgs {
  std::string scenario;
  std::string map = "N";
  int n = 5;
  int m = 1;
  double theta = 1.3;
  std::string output;
  std::string image;
  PlotOptions options;
};

int run_plot_cmd(const Globals& g, const PlotArgs& a) {
  PlotScenario sc;
  if (!a.scenario.empty()) {
    sc = scenario_as<PlotScenario>(a.scenario, "plot");
  } else {
    sc.map = make_map(a.map, a.n, a.m, a.theta);
    sc.options = a.options;
    sc.out = a.output;
    const bool pgm = sc.out.size() >= 4 && sc.out.compare(sc.out.size() - 4, 4, ".pgm") == 0;
    sc.format = pgm ? PlotFormat::Pgm : PlotFormat::Svg;
  }
  if (!a.output.empty()) sc.out = a.output;
  if (!a.image.empty()) sc.format = a.image == "pgm" ? PlotFormat::Pgm : PlotFormat::Svg;
  if (sc.out.empty()) throw SchemaError("field 'out': an output path is required (-o)");

  const PlotData data = plot_curves(sc.map, sc.options);
  const std::string bytes = render(data, sc.format, sc.options.pixels);
  std::ofstream f(sc.out, std::ios::binary);
  if (!f || !(f << bytes)) throw SchemaError("cannot write '" + sc.out + "'");

  json j;
  j["map"] = data.title;
  j["file"] = sc.out;
  j["format"] = sc.format == PlotFormat::Pgm ? "pgm" : "svg";
  j["bytes"] = bytes.size();
  std::string text = "wrote " + sc.out + " (" + data.title + ", " + std::to_string(bytes.size()) + " bytes)\n";
  if (const auto* star = std::get_if<slit::N>(&sc.map); star && sc.options.samples % star->n == 0) {
    const double origin = roots_of_unity_residual(data, star->n);
    j["roots_of_unity_residual"] = origin;
    text += "unit-circle image at roots of unity: max |f| = " + num(origin) + "\n";
  }
  if (std::holds_alternative<slit::K>(sc.map)) {
    const double refl = reflection_residual(sc.map, sc.options);
    j["reflection_residual"] = refl;
    text += "axis reflection residual " + num(refl) + "\n";
  }
  // Plot files go to -o; the summary goes to --out or stdout.
  emit(g, j, text);
  return kOk;
}

// ---------------------------------------------------------------- verify

int run_verify_cmd(const Globals& g, const std::string& suite) {
  const VerifyReport r = run_verify(suite);
  json j;
  j["suite"] = r.suite;
  json rows = json::array();
  std::string text;
  for (const auto& c : r.results) {
    rows.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
    text += format_result(c) + "\n";
  }
  j["results"] = rows;
  j["seconds"] = r.seconds;
  j["pass"] = r.pass();
  text += std::string(r.pass() ? "all passed" : "FAILURES") + " (" + num(r.seconds) + " s)\n";
  emit(g, j, text);
  return r.pass() ? kOk : kTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schiffer variations: slit maps, deformation cocycles, period and differential expansions"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write the report to this file instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));

  CocycleArgs ca;
  auto* cocycle = app.add_subcommand("cocycle", "Print the first and second variation cocycles of a deformation");
  cocycle->add_option("--scenario", ca.scenario, "Cocycle scenario file")->check(CLI::ExistingFile);
  cocycle->add_option("--case", ca.name, "SS, NN, SP, SQ or SK")->check(CLI::IsMember({"SS", "NN", "SP", "SQ", "SK"}));
  cocycle->add_option("--n", ca.n, "n for NN and SQ");
  cocycle->add_option("--m", ca.m, "m for SQ");
  cocycle->add_option("--theta", ca.theta, "theta for SK");
  cocycle->add_option("--point", ca.points, "Numeric check at w = RE or RE,IM (repeatable)");

  std::string gamma_path, omega_path, rank_path;
  auto* gamma = app.add_subcommand("gamma", "Second-order update of the period matrix by two paths");
  gamma->add_option("scenario", gamma_path, "Gamma scenario file")->required()->check(CLI::ExistingFile);
  auto* omega = app.add_subcommand("omega", "Nested-contour expansion of an Abelian differential");
  omega->add_option("scenario", omega_path, "Omega scenario file")->required()->check(CLI::ExistingFile);
  auto* rank = app.add_subcommand("rank", "Rank of Schiffer deformations on a hyperelliptic curve");
  rank->add_option("scenario", rank_path, "Rank scenario file")->required()->check(CLI::ExistingFile);

  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "Render the image of a polar grid under a slit map");
  plot->add_option("--scenario", pa.scenario, "Plot scenario file")->check(CLI::ExistingFile);
  plot->add_option("--map", pa.map, "S, N, P, K or Q")->check(CLI::IsMember({"S", "N", "P", "K", "Q"}));
  plot->add_option("--n", pa.n, "n for N and Q");
  plot->add_option("--m", pa.m, "m for Q");
  plot->add_option("--theta", pa.theta, "theta for K");
  plot->add_option("-o,--output", pa.output, "Image file");
  plot->add_option("--image", pa.image, "Image format (default from the file extension)")
      ->check(CLI::IsMember({"svg", "pgm"}));
  plot->add_option("--rays", pa.options.rays, "Radial curves");
  plot->add_option("--circles", pa.options.circles, "Circle curves");
  plot->add_option("--samples", pa.options.samples, "Samples per curve");
  plot->add_option("--r-min", pa.options.r_min, "Smallest radius");
  plot->add_option("--r-max", pa.options.r_max, "Largest radius");
  plot->add_option("--pixels", pa.options.pixels, "Image size");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run acceptance suites");
  verify->add_option("suite", suite, "Suite name")->check(CLI::IsMember(verify_suites()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cocycle) return run_cocycle(g, ca);
    if (*gamma) return run_gamma_cmd(g, gamma_path);
    if (*omega) return run_omega_cmd(g, omega_path);
    if (*rank) return run_rank_cmd(g, rank_path);
    if (*plot) return run_plot_cmd(g, pa);
    if (*verify) return run_verify_cmd(g, suite);
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kConvergence;
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive measurement: " << e.what() << "\n";
    return kConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
