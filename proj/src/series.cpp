#include "schiffer/series.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace schiffer {

namespace {

std::string format_coeff(Complex c) {
  std::ostringstream os;
  os << std::setprecision(12);
  const double scale = std::abs(c);
  if (std::abs(c.imag()) <= 1e-13 * scale) {
    os << c.real();
  } else if (std::abs(c.real()) <= 1e-13 * scale) {
    os << c.imag() << "i";
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(std::map<int, Complex> coeffs) : coeffs_(std::move(coeffs)) { clamp(); }

LaurentPoly LaurentPoly::constant(Complex c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(Complex c, int exponent) { return LaurentPoly({{exponent, c}}); }

void LaurentPoly::clamp() {
  std::erase_if(coeffs_, [](const auto& kv) { return std::abs(kv.second) < kZeroClamp; });
}

Complex LaurentPoly::coeff(int k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex{} : it->second;
}

int LaurentPoly::min_exponent() const {
  if (coeffs_.empty()) throw ContractError("min_exponent of the zero polynomial");
  return coeffs_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (coeffs_.empty()) throw ContractError("max_exponent of the zero polynomial");
  return coeffs_.rbegin()->first;
}

LaurentPoly LaurentPoly::derivative() const {
  std::map<int, Complex> out;
  for (const auto& [k, c] : coeffs_) {
    if (k != 0) out[k - 1] = c * static_cast<double>(k);
  }
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::scale_argument(Complex a) const {
  std::map<int, Complex> out;
  for (const auto& [k, c] : coeffs_) out[k] = c * std::pow(a, k);
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::shift(int k) const {
  std::map<int, Complex> out;
  for (const auto& [e, c] : coeffs_) out[e + k] = c;
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::pow(int k) const {
  if (k < 0) throw ContractError("LaurentPoly::pow with negative exponent");
  LaurentPoly out = constant(1.0);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

Complex LaurentPoly::operator()(Complex z) const {
  if (z == Complex{} && !coeffs_.empty() && coeffs_.begin()->first < 0) {
    throw DomainError("Laurent polynomial with negative exponents evaluated at z = 0");
  }
  Complex sum{};
  for (const auto& [k, c] : coeffs_) sum += c * std::pow(z, k);
  return sum;
}

double LaurentPoly::max_abs() const {
  double m = 0.0;
  for (const auto& kv : coeffs_) m = std::max(m, std::abs(kv.second));
  return m;
}

std::string LaurentPoly::str(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    out += format_coeff(c);
    if (k == 1) {
      out += "*" + var;
    } else if (k != 0) {
      out += "*" + var + "^" + std::to_string(k);
    }
  }
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [k, c] : other.coeffs_) coeffs_[k] += c;
  clamp();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [k, c] : other.coeffs_) coeffs_[k] -= c;
  clamp();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex s) {
  for (auto& kv : coeffs_) kv.second *= s;
  clamp();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<int, Complex> out;
  for (const auto& [i, ci] : a.coeffs())
    for (const auto& [j, cj] : b.coeffs()) out[i + j] += ci * cj;
  return LaurentPoly(std::move(out));
}

double max_coeff_diff(const LaurentPoly& a, const LaurentPoly& b) {
  double m = 0.0;
  for (const auto& [k, c] : a.coeffs()) m = std::max(m, std::abs(c - b.coeff(k)));
  for (const auto& [k, c] : b.coeffs()) m = std::max(m, std::abs(c - a.coeff(k)));
  return m;
}

// ---------------------------------------------------------------- EpsSeries

EpsSeries::EpsSeries(int order) {
  if (order < 0) throw ContractError("EpsSeries order must be non-negative");
  terms_.resize(static_cast<std::size_t>(order) + 1);
}

EpsSeries::EpsSeries(std::vector<LaurentPoly> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ContractError("EpsSeries needs at least one term");
}

EpsSeries EpsSeries::identity(int order) {
  EpsSeries s(order);
  s.term(0) = LaurentPoly::identity();
  return s;
}

EpsSeries EpsSeries::constant(const LaurentPoly& p, int order) {
  EpsSeries s(order);
  s.term(0) = p;
  return s;
}

bool EpsSeries::identity_based() const {
  const auto& c = terms_.front().coeffs();
  return c.size() == 1 && c.begin()->first == 1 && std::abs(c.begin()->second - 1.0) <= kZeroClamp;
}

EpsSeries EpsSeries::truncated(int order) const {
  EpsSeries out(order);
  for (int j = 0; j <= std::min(order, this->order()); ++j) out.term(j) = term(j);
  return out;
}

Complex EpsSeries::operator()(Complex eps, Complex z) const {
  Complex sum{};
  Complex power = 1.0;
  for (const auto& t : terms_) {
    if (!t.is_zero()) sum += power * t(z);
    power *= eps;
  }
  return sum;
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& other) {
  if (other.order() > order()) terms_.resize(other.terms_.size());
  for (int j = 0; j <= other.order(); ++j) term(j) += other.term(j);
  return *this;
}

EpsSeries& EpsSeries::operator*=(Complex s) {
  for (auto& t : terms_) t *= s;
  return *this;
}

// ---------------------------------------------------------------- operations

EpsSeries es_mul(const EpsSeries& a, const EpsSeries& b, int order) {
  EpsSeries out(order);
  for (int i = 0; i <= std::min(order, a.order()); ++i) {
    if (a.term(i).is_zero()) continue;
    for (int j = 0; j <= std::min(order - i, b.order()); ++j) {
      if (b.term(j).is_zero()) continue;
      out.term(i + j) += a.term(i) * b.term(j);
    }
  }
  return out;
}

EpsSeries es_binomial(Complex c, int p, int q, const Rational& alpha, int order) {
  if (p < 1) throw ContractError("es_binomial requires p >= 1");
  EpsSeries out(order);
  for (int k = 0; p * k <= order; ++k) {
    const double coeff = binomial(alpha, k);
    if (coeff == 0.0) break;
    out.term(p * k) = LaurentPoly::monomial(coeff * std::pow(c, k), q * k);
  }
  return out;
}

EpsSeries es_compose(const EpsSeries& g, const EpsSeries& f, Complex a, int order) {
  if (!f.identity_based()) throw ContractError("es_compose: inner family is not identity based");

  EpsSeries delta(order);
  for (int j = 1; j <= std::min(order, f.order()); ++j) delta.term(j) = f.term(j) * a;

  // delta^k / k!
  std::vector<EpsSeries> delta_pow;
  delta_pow.push_back(EpsSeries::constant(LaurentPoly::constant(1.0), order));
  for (int k = 1; k <= order; ++k) {
    delta_pow.push_back(es_mul(delta_pow.back(), delta, order) * (1.0 / k));
  }

  EpsSeries out(order);
  for (int j = 0; j <= std::min(order, g.order()); ++j) {
    LaurentPoly deriv = g.term(j);
    // g_j is expanded to displacement order N - j.
    for (int k = 0; k <= order - j && !deriv.is_zero(); ++k) {
      const LaurentPoly at = deriv.scale_argument(a);
      for (int i = k; i + j <= order; ++i) {
        const LaurentPoly& d = delta_pow[static_cast<std::size_t>(k)].term(i);
        if (!d.is_zero()) out.term(i + j) += at * d;
      }
      deriv = deriv.derivative();
    }
  }
  return out;
}

EpsSeries es_inverse(const EpsSeries& g) {
  if (!g.identity_based()) throw ContractError("es_inverse: family is not identity based");
  const int order = g.order();
  EpsSeries f = EpsSeries::identity(order);
  // The order-n coefficient of G(F) depends on f_n only through f_n itself.
  for (int n = 1; n <= order; ++n) {
    const EpsSeries composed = es_compose(g, f, 1.0, n);
    f.term(n) -= composed.term(n);
  }
  return f;
}

}  // namespace schiffer
