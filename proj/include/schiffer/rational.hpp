#pragma once

#include <cstdint>
#include <string>

namespace schiffer {

/// Exact rational number, always normalized (gcd(num, den) = 1, den > 0).
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const noexcept { return den_ == 1; }

  /// Parses "p/q" or "p".
  static Rational parse(const std::string& text);
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Generalized binomial coefficient C(alpha, k) = alpha (alpha-1) ... (alpha-k+1) / k!.
/// The numerator factors are formed exactly in integer arithmetic.
double binomial(const Rational& alpha, int k);

}  // namespace schiffer
