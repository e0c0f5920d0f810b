#include "schiffer/rational.hpp"

#include <numeric>
#include <stdexcept>

#include "schiffer/errors.hpp"

namespace schiffer {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ContractError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Rational Rational::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw ContractError("cannot parse rational '" + text + "'");
  }
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

double binomial(const Rational& alpha, int k) {
  double value = 1.0;
  for (int i = 0; i < k; ++i) {
    const auto factor = alpha.num() - static_cast<std::int64_t>(i) * alpha.den();
    value *= static_cast<double>(factor) / (static_cast<double>(alpha.den()) * (i + 1));
  }
  return value;
}

}  // namespace schiffer
