#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "schiffer/jet.hpp"
#include "schiffer/residues.hpp"
#include "schiffer/series.hpp"

namespace schiffer {

/// Local model of the Abelian kernel Lambda(s, t) = 1/(pi (s - t)^2) + regular,
/// written as coefficients in one coordinate chart.
struct KernelModel {
  std::function<Complex(Complex, Complex)> eval;
  /// lambda(p), the finite part of Lambda(p, q) at q = p.
  std::function<Complex(Complex)> reg;
  /// Optional analytic d^j/dt^j Lambda(s, t).
  std::function<Complex(Complex, Complex, int)> deriv;
};

/// 1/(pi (s - t)^2) + sum_ij G_ij s^i t^j. G must be symmetric.
KernelModel polynomial_kernel(const Eigen::MatrixXcd& g);

struct KernelCheck {
  double symmetry = 0.0;
  double pole = 0.0;
  double consistency = 0.0;

  bool ok() const { return symmetry <= 1e-10 && pole <= 1e-8 && consistency <= 1e-5; }
};

/// Measures the symmetry, pole normalization and regularization residuals of
/// a kernel at the sample points, probing the diagonal at distance h.
KernelCheck check_kernel(const KernelModel& kernel, const std::vector<Complex>& samples, double h = 1e-3);

/// d^j/dt^j Lambda(s, t), analytic when the kernel provides it and otherwise
/// from a Cauchy circle of radius min(h, |s - t| / 3). Throws ContractError
/// for j above kMaxStencilOrder without an analytic derivative.
inline constexpr int kMaxStencilOrder = 4;
Complex kernel_derivative(const KernelModel& kernel, Complex s, Complex t, int j, double h = 1.0);

struct PeriodData {
  int g = 0;
  Eigen::MatrixXcd pi;
  /// 2g x 2g with rows and columns ordered A_1, B_1, A_2, B_2, ...
  Eigen::MatrixXcd gamma;
};

/// Gamma from the bilinear relations, with dual basis coefficients
/// dZ_odd = -(Im Pi)^-1 alpha, dZ_even = -conj(Pi) (Im Pi)^-1 alpha.
/// Throws ContractError when Pi is not symmetric and DomainError when Im Pi
/// is not positive definite.
PeriodData gamma_from_pi(const Eigen::MatrixXcd& pi);

/// Pi = Gamma_oo^-1 Gamma_oe. Throws DomainError when Gamma_oo is singular.
Eigen::MatrixXcd pi_from_gamma(const Eigen::MatrixXcd& gamma);

/// The odd (A) and even (B) index blocks of a 2g x 2g matrix.
Eigen::MatrixXcd gamma_block(const Eigen::MatrixXcd& gamma, int row_parity, int col_parity);

struct BasisResiduals {
  double hermitian = 0.0;
  double alpha_from_gamma = 0.0;  // -Gamma_oo^-1 C_odd = I
  double pi_from_gamma = 0.0;     // Pi = Gamma_oo^-1 Gamma_oe
  double even_from_odd = 0.0;     // C_even = conj(Pi) C_odd
};

BasisResiduals basis_residuals(const PeriodData& data);

/// Coefficients of eps and eps^2 in the expansion of Gamma_{mu nu}, indexed by
/// the differentials supplied.
struct GammaUpdate {
  Eigen::MatrixXcd order1;
  Eigen::MatrixXcd order2;
};

/// Taylor data of the differentials omega_mu at p in the chart coordinate.
struct DifferentialJets {
  Complex p{};
  std::vector<Jet> omegas;
  Complex lambda{};
  /// Order of the zero of the distinguished differential at p, when relevant.
  std::optional<int> zero_order;
};

/// Differentials given as functions with their derivatives.
struct DifferentialFns {
  std::vector<AnalyticFn> omegas;
  std::vector<AnalyticFn> derivatives;

  static DifferentialFns from_jets(const std::vector<Jet>& jets);
};

/// Contour form: r1, r2 are Laurent polynomials in (z - p); inner lies
/// strictly inside outer and encloses p.
GammaUpdate gamma_update_contour(const DifferentialFns& omegas, const KernelModel& kernel, Complex p,
                                 const LaurentPoly& r1, const LaurentPoly& r2, const Contour& outer,
                                 const Contour& inner);

/// Residue-evaluated form for r1 = a/z, r2 = b/z^m.
GammaUpdate gamma_update_closed(Complex a, Complex b, int m, const DifferentialJets& jets);

/// Residue at p of (z - p)^-k omega psi, i.e. the coefficient c_{k-1} of omega psi.
/// Throws ContractError when k < 1 or c_{k-1} is beyond either jet.
Complex isoperiodic_residues(const Jet& omega, int k, const std::optional<Jet>& psi = std::nullopt);

/// First and second variation of omega at q for r = a/z at p.
std::pair<Complex, Complex> omega_variation_closed(Complex a, const Jet& omega, Complex lambda,
                                                   const KernelModel& kernel, Complex q, double h = 1e-4);

struct OmegaExpansion {
  std::vector<Complex> terms;  // omega^(0)(q) .. omega^(n)(q)
  std::vector<double> radii;   // contour radii rho_1 .. rho_n
  /// Fixed-point residual of the order-n partial sum at each parameter value.
  std::function<Complex(double)> residual;
};

/// Nested-contour expansion of the variation of omega at q. Contour k has
/// radius rho_0 (1 + k/(n+1)) about base.center(); the residual contour has
/// radius 2 rho_0. q must lie outside the residual contour.
OmegaExpansion omega_expansion(const KernelModel& kernel, const AnalyticFn& omega, const LaurentPoly& r, int n,
                               const Contour& base, Complex q);

/// Least-squares slope of log|R| against log eps.
double loglog_slope(const std::vector<double>& eps, const std::vector<double>& values);

/// det[k! c_{sigma,k}], k = 0..g-1.
Complex wronskian(const std::vector<Jet>& jets);

struct SchifferSite {
  Complex point{};
  std::vector<int> exponents;
};

/// Pairing matrix rows (site, k), columns phi_j, entries res (z - p)^-k phi_j = c_{k-1}.
/// jets[j][s] is the jet of phi_j at site s.
Eigen::MatrixXcd schiffer_pairing_matrix(const std::vector<SchifferSite>& sites,
                                         const std::vector<std::vector<Jet>>& jets);
int schiffer_rank(const std::vector<SchifferSite>& sites, const std::vector<std::vector<Jet>>& jets,
                  double rel_threshold = 1e-8);

/// Jets of x^k dx / y, k = 0..g-1, on y^2 = f(x) at (x0, y0) in the coordinate x - x0.
/// f is given by ascending coefficients.
std::vector<Jet> hyperelliptic_jets(const std::vector<Complex>& f, Complex x0, Complex y0, int depth);

/// Jets of the quadratic differentials x^j dx^2 / y^2 (j <= 2g-2) and
/// x^j dx^2 / y (j <= g-3).
std::vector<Jet> hyperelliptic_quadratic_jets(const std::vector<Complex>& f, Complex x0, Complex y0, int depth);

int hyperelliptic_genus(const std::vector<Complex>& f);

/// -2i a^T (Im Pi) Gammadot_oo (Im Pi).
Eigen::VectorXcd bperiod_variation(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& pi,
                                   const Eigen::MatrixXcd& gammadot_oo);

/// 4 pi^2 (alpha_p^T (Im Pi)^-1 conj(alpha_q))^2.
Complex siegel_pairing(const Eigen::VectorXcd& alpha_p, const Eigen::VectorXcd& alpha_q,
                       const Eigen::MatrixXd& im_pi);

}  // namespace schiffer
