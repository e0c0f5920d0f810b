#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schiffer/deformations.hpp"
#include "schiffer/periods.hpp"
#include "schiffer/plot.hpp"

namespace schiffer {

/// Malformed scenario file or field; the message names the offending field.
class SchemaError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// Builds a deformation case from a name (SS, NN, SP, SQ, SK) and parameters.
DeformationCase make_case(const std::string& name, int n, int m, double theta);
/// Builds a slit map from a name (S, N, P, K, Q) and parameters.
SlitMapSpec make_map(const std::string& name, int n, int m, double theta);

struct CocycleScenario {
  DeformationCase deformation = deform::SS{};
  std::vector<Complex> points;
  std::vector<double> taus = kDefaultTaus;
};

/// Kernel 1/(pi (s - t)^2) + sum G_ij s^i t^j in the chart coordinate.
struct GammaScenario {
  Complex p{};
  Complex a{1.0};
  Complex b{};
  int m = 1;
  Eigen::MatrixXcd kernel_poly;
  std::vector<Jet> omegas;
  double outer_radius = 0.5;
  double inner_radius = 0.25;
  int samples = 256;
  double tol = 1e-10;
};

struct OmegaScenario {
  Complex p{};
  Eigen::MatrixXcd kernel_poly;
  Jet omega;
  LaurentPoly r;
  int n = 1;
  double rho0 = 0.1;
  int samples = 512;
  Complex q{};
  std::vector<double> eps;
  double tol = 1e-8;
};

struct RankSite {
  Complex x{};
  Complex y{};
  std::vector<int> exponents;
};

struct RankScenario {
  std::vector<Complex> f;
  std::vector<RankSite> sites;
  int depth = 4;
  std::optional<int> expected_rank;
};

struct PlotScenario {
  SlitMapSpec map = slit::S{};
  PlotOptions options;
  PlotFormat format = PlotFormat::Svg;
  std::string out;
};

struct VerifyScenario {
  std::string suite = "all";
};

using Scenario = std::variant<CocycleScenario, GammaScenario, OmegaScenario, RankScenario, PlotScenario, VerifyScenario>;

/// Throws SchemaError with the field path on malformed input.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

struct GammaReport {
  Complex lambda;
  GammaUpdate closed;
  GammaUpdate contour;
  double discrepancy = 0.0;
  bool within_tolerance = false;
};

GammaReport run_gamma(const GammaScenario& s);

struct OmegaReport {
  std::vector<Complex> terms;
  std::vector<double> eps;
  std::vector<double> residuals;
  std::optional<double> slope;
  /// Closed-form first and second variation when r is a simple pole a/z.
  std::optional<std::pair<Complex, Complex>> closed;
  double closed_discrepancy = 0.0;
  bool within_tolerance = true;
};

OmegaReport run_omega(const OmegaScenario& s);

struct RankReport {
  int genus = 0;
  int rank = 0;
  Eigen::MatrixXcd matrix;
  std::vector<Complex> wronskians;  // one per site
  bool matches_expected = true;
};

RankReport run_rank(const RankScenario& s);

}  // namespace schiffer
