#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "schiffer/series.hpp"
#include "schiffer/slitmaps.hpp"

namespace schiffer {

/// Cut-and-reglue families A_eps(w) = a^-1 F_eps(a G_eps^-1(w)) built from
/// scaled slit maps.
namespace deform {

/// S_eps alone.
struct SS {};
/// e^-1 N_eps(e N_eps^-1(w)) with e = exp(i pi / n).
struct NN {
  int n = 2;
};
/// S_eps(P_eps^-1(w)).
struct SP {};
/// S_eps(Q_eps^-1(w)).
struct SQ {
  int m = 1;
  int n = 3;
};
/// S_eps(K_eps^-1(w)).
struct SK {
  double theta = 0.0;
};

}  // namespace deform

using DeformationCase = std::variant<deform::SS, deform::NN, deform::SP, deform::SQ, deform::SK>;

std::string describe(const DeformationCase& c);

/// The parameter exponent d for which the family is a series in tau = eps^d.
int natural_order(const DeformationCase& c);

/// First and second variation vector fields r_1(w) d/dw and r_2(w) d/dw,
/// taken as first and second derivatives in the natural parameter tau = eps^d.
struct Cocycle {
  int base_order = 0;  // 0 marks the trivial cocycle
  LaurentPoly first;
  LaurentPoly second;

  bool trivial() const noexcept { return base_order == 0; }
};

/// a^-1 es_compose(slit_series(F), es_inverse(slit_series(G)), a, N). Requires |a| = 1.
EpsSeries deform_compose(const SlitMapSpec& outer, const SlitMapSpec& inner, Complex rotation, int order);

/// Series of the family for a case; order <= 0 picks max(8, 2 d).
EpsSeries case_series(const DeformationCase& c, int order = 0);

/// d = least j >= 1 with a_j != 0, first = a_d, second = 2 a_{2d}.
Cocycle cocycle_extract(const EpsSeries& family);

/// Closed-form cocycles. Throws NotAvailableError for SQ other than (1, 3).
Cocycle cocycle_oracle(const DeformationCase& c);

/// Numeric value A_eps(w) of the family.
Complex deformation_eval(const DeformationCase& c, double eps, Complex w);

inline const std::vector<double> kDefaultTaus{1e-2, 5e-3, 2.5e-3, 1.25e-3};

struct CocycleEstimate {
  int base_order = 0;
  Complex first;
  Complex second;
  double first_error = 0.0;   // change when the coarsest tau is dropped
  double second_error = 0.0;
};

/// Richardson (polynomial) extrapolation of the first and second tau
/// derivatives of A_tau(z) at tau = 0 from samples at tau in `taus`.
CocycleEstimate cocycle_numeric(const DeformationCase& c, Complex z, const std::vector<double>& taus = kDefaultTaus);

struct SplitOptions {
  double probe_factor = 0.3;  // probe circle radius, in units of eps
  int samples = 512;
  int edge_samples = 64;
};

struct SplitReport {
  std::vector<Complex> image_points;
  std::vector<int> predicted_orders;
  std::vector<int> measured_orders;
  std::vector<std::pair<std::string, double>> boundary_residuals;

  double max_boundary_residual() const;
  bool orders_match() const { return predicted_orders == measured_orders; }
};

/// Zero orders of the pushforward of the flat-structure differential and the
/// boundary identifications of the composition. Requires eps in (0, 0.1].
SplitReport splitting_verify(const DeformationCase& c, double eps, const SplitOptions& options = {});

/// Winding number of f around the circle, sampled at half-step offsets.
/// Throws InconclusiveError when f nearly vanishes or varies too fast.
int winding_number(const std::function<Complex(Complex)>& f, Complex center, double radius, int samples);

}  // namespace schiffer
