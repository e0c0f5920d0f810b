#include "doctest.h"

#include <cmath>
#include <numbers>

#include "schiffer/slitmaps.hpp"

using namespace schiffer;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double coeff_err(const LaurentPoly& p, int k, Complex want) { return std::abs(p.coeff(k) - want); }

}  // namespace

TEST_CASE("slit_eval values") {
  CHECK(std::abs(slit_eval(slit::S{}, 2.0) - 2.5) < 1e-15);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(slit_eval(slit::N{5}, std::polar(1.0, 2 * kPi * k / 5))) < 1e-12);
  CHECK(std::abs(slit_eval(slit::K{1.3}, std::polar(1.0, 1.3))) < 1e-12);
  CHECK_THROWS_AS(slit_eval(slit::S{}, 0.5), DomainError);
  CHECK_THROWS_AS(validate(slit::N{1}), ContractError);
  CHECK_THROWS_AS(validate(slit::Q{3, 3}), ContractError);
  CHECK_THROWS_AS(validate(slit::K{2.0}), ContractError);
  CHECK_THROWS_AS(validate(slit::Radial{{0.0, 1.0}, {Rational(1), Rational(1, 2)}}), ContractError);
}

TEST_CASE("boundary and symmetry properties") {
  for (int j = 0; j < 64; ++j) {
    const double t = 2 * kPi * (j + 0.5) / 64;
    const Complex u = std::polar(1.0, t);
    CHECK(std::abs(slit_eval(slit::S{}, u).imag()) < 1e-12);
    CHECK(std::abs(slit_eval(slit::S{}, u).real() - 2 * std::cos(t)) < 1e-12);
    const Complex z = std::polar(1.0 + 0.05 * (j % 7), t);
    CHECK(std::abs(slit_eval(slit::P{}, z) - slit_eval(slit::Q{1, 3}, z)) < 1e-12);
    CHECK(std::abs(slit_eval(slit::P{}, std::conj(z)) - std::conj(slit_eval(slit::P{}, z))) < 1e-12);
    CHECK(std::abs(slit_eval(slit::Q{2, 5}, std::conj(z)) - std::conj(slit_eval(slit::Q{2, 5}, z))) < 1e-12);
    const Complex k = slit_eval(slit::K{0.7}, z);
    CHECK(std::abs(slit_eval(slit::K{0.7}, -std::conj(z)) + std::conj(k)) < 1e-12);
    const Complex r = std::polar(1.0, kPi / 4);
    CHECK(std::abs(slit_eval(slit::K{kPi / 4}, z) - slit_eval(slit::N{4}, r * z) / r) < 1e-12);
  }
}

TEST_CASE("slit_series expansions") {
  const EpsSeries s = slit_series(slit::S{}, 4);
  CHECK(s.identity_based());
  CHECK(coeff_err(s.term(2), -1, 1.0) < 1e-15);
  for (int j : {1, 3, 4}) CHECK(s.term(j).is_zero());
  CHECK(s.term(2).coeffs().size() == 1);

  const EpsSeries p = slit_series(slit::P{}, 2);
  CHECK(coeff_err(p.term(1), 0, 2.0 / 3.0) < 1e-14);
  CHECK(coeff_err(p.term(2), -1, -7.0 / 9.0) < 1e-14);

  for (double t : {0.0, 0.4, 1.3}) {
    const EpsSeries k = slit_series(slit::K{t}, 4);
    CHECK(coeff_err(k.term(2), -1, -std::cos(2 * t)) < 1e-14);
    CHECK(coeff_err(k.term(4), -3, (1 - std::cos(4 * t)) / 4) < 1e-14);
    CHECK(k.term(1).is_zero());
    CHECK(k.term(3).is_zero());
  }

  for (int n = 2; n <= 6; ++n) {
    const EpsSeries N = slit_series(slit::N{n}, 2 * n);
    CHECK(coeff_err(N.term(n), 1 - n, -2.0 / n) < 1e-14);
    CHECK(coeff_err(N.term(2 * n), 1 - 2 * n, (1.0 / n) * (2.0 / n - 1)) < 1e-14);
  }
}

TEST_CASE("series agrees with the scaled map") {
  // eps f(z/eps) minus the truncated series shrinks like eps^{N+1}.
  const Complex z = std::polar(1.0, 0.9);
  const int order = 4;
  const EpsSeries p = slit_series(slit::P{}, order);
  auto err = [&](double e) { return std::abs(scaled_eval(slit::P{}, e, z) - p(e, z)); };
  const double slope = std::log(err(0.1) / err(0.05)) / std::log(2.0);
  CHECK(slope == doctest::Approx(order + 1).epsilon(0.05));
}

TEST_CASE("slit_invert") {
  CHECK(std::abs(slit_invert(slit::S{}, 2.5) - 2.0) < 1e-13);
  const Complex far(6e5, 8e5);
  for (const SlitMapSpec& s : {SlitMapSpec{slit::S{}}, SlitMapSpec{slit::N{4}}, SlitMapSpec{slit::K{0.3}}}) {
    CHECK(std::abs(slit_invert(s, far) - far) < 1e-5);
  }
  for (int j = 0; j < 360; ++j) {
    const Complex w = std::polar(3.0, 2 * kPi * j / 360);
    const Complex z = slit_invert(slit::P{}, w);
    CHECK(std::abs(z) > 1.0);
    CHECK(std::abs(slit_eval(slit::P{}, z) - w) < 1e-12);
  }
  // Near a slit the continuation fallback still lands on the exterior root.
  const Complex near_slit(1.0, 1e-3);
  const Complex z = slit_invert(slit::S{}, near_slit);
  CHECK(std::abs(slit_eval(slit::S{}, z) - near_slit) < 1e-12);
  CHECK(std::abs(z) > 1.0);
}

TEST_CASE("slit_invert reports failure") {
  InvertOptions o;
  o.max_iter = 1;
  o.max_halvings = 0;
  CHECK_THROWS_AS(slit_invert(slit::N{6}, Complex(0.3, 0.01), o), ConvergenceError);
}
