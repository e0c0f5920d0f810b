#pragma once

#include <map>
#include <string>
#include <vector>

#include "schiffer/errors.hpp"
#include "schiffer/rational.hpp"

namespace schiffer {

/// Coefficients below this magnitude are dropped from a LaurentPoly.
inline constexpr double kZeroClamp = 1e-14;

/// Default truncation order in the deformation parameter.
inline constexpr int kDefaultOrder = 8;

/// Finite Laurent polynomial sum_k c_k z^k with possibly negative exponents.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, Complex> coeffs);

  static LaurentPoly constant(Complex c);
  static LaurentPoly monomial(Complex c, int exponent);
  static LaurentPoly identity() { return monomial(1.0, 1); }

  const std::map<int, Complex>& coeffs() const noexcept { return coeffs_; }
  Complex coeff(int k) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int min_exponent() const;
  int max_exponent() const;

  /// Coefficient of z^-1.
  Complex residue() const { return coeff(-1); }
  LaurentPoly derivative() const;
  /// The polynomial z -> p(a z).
  LaurentPoly scale_argument(Complex a) const;
  /// Multiplies by z^k.
  LaurentPoly shift(int k) const;
  LaurentPoly pow(int k) const;

  /// Throws DomainError at z = 0 when negative exponents are present.
  Complex operator()(Complex z) const;

  /// Largest coefficient magnitude.
  double max_abs() const;
  std::string str(const std::string& var = "z") const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(Complex s);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= -1.0; }
  friend LaurentPoly operator*(LaurentPoly a, Complex s) { return a *= s; }
  friend LaurentPoly operator*(Complex s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

 private:
  void clamp();
  std::map<int, Complex> coeffs_;
};

/// Largest coefficient difference between two Laurent polynomials.
double max_coeff_diff(const LaurentPoly& a, const LaurentPoly& b);

/// Truncated series sum_{j=0}^{N} eps^j a_j(z) with Laurent polynomial
/// coefficients; models one-parameter families of maps z + O(eps).
class EpsSeries {
 public:
  /// Zero series of order N (N + 1 zero terms).
  explicit EpsSeries(int order = kDefaultOrder);
  explicit EpsSeries(std::vector<LaurentPoly> terms);

  /// The family a_0 = z, a_j = 0.
  static EpsSeries identity(int order);
  static EpsSeries constant(const LaurentPoly& p, int order);

  int order() const noexcept { return static_cast<int>(terms_.size()) - 1; }
  const std::vector<LaurentPoly>& terms() const noexcept { return terms_; }
  const LaurentPoly& term(int j) const { return terms_.at(static_cast<std::size_t>(j)); }
  LaurentPoly& term(int j) { return terms_.at(static_cast<std::size_t>(j)); }

  /// True when a_0(z) = z.
  bool identity_based() const;
  EpsSeries truncated(int order) const;
  /// Evaluates sum eps^j a_j(z).
  Complex operator()(Complex eps, Complex z) const;

  EpsSeries& operator+=(const EpsSeries& other);
  EpsSeries& operator*=(Complex s);
  friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { return a += b; }
  friend EpsSeries operator*(EpsSeries a, Complex s) { return a *= s; }

 private:
  std::vector<LaurentPoly> terms_;
};

/// Cauchy product truncated at order N.
EpsSeries es_mul(const EpsSeries& a, const EpsSeries& b, int order);

/// Expansion of (1 + c eps^p z^q)^alpha truncated at eps-order N.
EpsSeries es_binomial(Complex c, int p, int q, const Rational& alpha, int order);

/// The family G_eps(a F_eps(z)) truncated at order N. F must be identity based.
EpsSeries es_compose(const EpsSeries& g, const EpsSeries& f, Complex a, int order);

/// The family F with G_eps(F_eps(z)) = z to the order of G. G must be identity based.
EpsSeries es_inverse(const EpsSeries& g);

}  // namespace schiffer
