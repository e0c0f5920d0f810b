#pragma once

#include <string>
#include <variant>
#include <vector>

#include "schiffer/errors.hpp"
#include "schiffer/rational.hpp"
#include "schiffer/series.hpp"

namespace schiffer {

/// Radial slit maps of the exterior of the unit disc, all of the product form
///   f(z) = z * prod_nu (1 - c_nu / z^{p_nu})^{alpha_nu},   |c_nu| = 1,
/// asymptotic to the identity at infinity.
namespace slit {

/// z + 1/z, the classical slit onto the complement of [-2, 2].
struct S {};
/// z (1 - z^-n)^{2/n}, the regular n-star.
struct N {
  int n = 2;
};
/// z (1 + 1/z)^{4/3} (1 - 1/z)^{2/3}, two slits at angles +-pi/3.
struct P {};
/// z (1 - e^{2i theta}/z^2)^{1/2} (1 - e^{-2i theta}/z^2)^{1/2}, the skean.
struct K {
  double theta = 0.0;
};
/// z (1 + 1/z)^{2(n-m)/n} (1 - 1/z)^{2m/n}, slits at angles +-pi m/n.
struct Q {
  int m = 1;
  int n = 3;
};
/// z prod_nu (1 - e^{-i theta_nu}/z)^{alpha_nu} with sum alpha_nu = 2.
struct Radial {
  std::vector<double> angles;
  std::vector<Rational> exponents;
};

}  // namespace slit

using SlitMapSpec = std::variant<slit::S, slit::N, slit::P, slit::K, slit::Q, slit::Radial>;

/// One factor (1 - c / z^power)^exponent of the product form.
struct SlitFactor {
  Complex c;
  int power = 1;
  Rational exponent;
};

/// Checks parameter constraints; throws ContractError on violation.
void validate(const SlitMapSpec& spec);
std::string describe(const SlitMapSpec& spec);
std::vector<SlitFactor> factors(const SlitMapSpec& spec);

/// Principal-branch value of the map for |z| >= 1; returns 0 at a factor zero
/// on the unit circle. Throws DomainError for |z| < 1.
Complex slit_eval(const SlitMapSpec& spec, Complex z);

/// Derivative f'(z), |z| > 1.
Complex slit_derivative(const SlitMapSpec& spec, Complex z);

/// The scaled family eps f(z / eps) as an identity-based EpsSeries of order N.
EpsSeries slit_series(const SlitMapSpec& spec, int order = kDefaultOrder);

struct InvertOptions {
  double tol = 1e-13;
  int max_iter = 50;
  int max_halvings = 20;
};

/// Solves f(z) = w for |z| > 1 by damped Newton iteration seeded at z = w.
/// Convergence means |f(z) - w| <= tol * max(1, |w|). When the direct seed
/// fails, the root is continued inward along the ray from 8 w/|w| to w.
/// Throws ConvergenceError carrying the last iterate.
Complex slit_invert(const SlitMapSpec& spec, Complex w, const InvertOptions& options = {});
Complex slit_invert(const SlitMapSpec& spec, Complex w, double tol, int max_iter);

/// The scaled map eps f(z / eps) and its inverse.
Complex scaled_eval(const SlitMapSpec& spec, double eps, Complex z);
Complex scaled_invert(const SlitMapSpec& spec, double eps, Complex w, const InvertOptions& options = {});

}  // namespace schiffer
