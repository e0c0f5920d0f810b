#include "doctest.h"

#include <cmath>
#include <numbers>

#include "schiffer/deformations.hpp"

using namespace schiffer;

namespace {

constexpr double kPi = std::numbers::pi;

bool same(const LaurentPoly& a, const LaurentPoly& b, double tol = 1e-10) { return max_coeff_diff(a, b) <= tol; }

}  // namespace

TEST_CASE("deform_compose") {
  const EpsSeries id = deform_compose(slit::S{}, slit::S{}, 1.0, 8);
  for (int j = 1; j <= 8; ++j) CHECK(id.term(j).max_abs() < 1e-12);

  for (int n = 2; n <= 5; ++n) {
    const EpsSeries a = deform_compose(slit::N{n}, slit::N{n}, std::polar(1.0, kPi / n), 2 * n);
    const double dn = n;
    CHECK(same(a.term(n), LaurentPoly::monomial(4.0 / dn, 1 - n)));
    CHECK(same(a.term(2 * n), LaurentPoly::monomial(8.0 * (1 - dn) / (dn * dn), 1 - 2 * n)));
  }

  const EpsSeries sp = deform_compose(slit::S{}, slit::P{}, 1.0, 2);
  CHECK(same(sp.term(1), LaurentPoly::constant(-2.0 / 3.0)));
  CHECK(same(sp.term(2), LaurentPoly::monomial(16.0 / 9.0, -1)));

  CHECK_THROWS_AS(deform_compose(slit::S{}, slit::P{}, 2.0, 2), ContractError);
}

TEST_CASE("cocycle_extract matches the closed forms") {
  const Cocycle ss = cocycle_extract(case_series(deform::SS{}));
  CHECK(ss.base_order == 2);
  CHECK(same(ss.first, LaurentPoly::monomial(1.0, -1)));
  CHECK(ss.second.is_zero());

  const Cocycle sp = cocycle_extract(case_series(deform::SP{}));
  CHECK(sp.base_order == 1);
  CHECK(same(sp.first, LaurentPoly::constant(-2.0 / 3.0)));
  CHECK(same(sp.second, LaurentPoly::monomial(32.0 / 9.0, -1)));

  for (double t : {0.0, 0.3, kPi / 4, 1.3}) {
    const Cocycle sk = cocycle_extract(case_series(deform::SK{t}));
    const double c2 = std::cos(2 * t), c4 = std::cos(4 * t);
    CHECK(sk.base_order == 2);
    CHECK(same(sk.first, LaurentPoly::monomial(1 + c2, -1)));
    CHECK(same(sk.second, LaurentPoly::monomial((-1 - 4 * c2 + c4 - 4 * c2 * c2) / 2, -3)));
  }
  const Cocycle sk0 = cocycle_oracle(deform::SK{0.0});
  CHECK(same(sk0.first, LaurentPoly::monomial(2.0, -1)));
  CHECK(same(sk0.second, LaurentPoly::monomial(-4.0, -3)));

  // SK at theta = pi/2 is S composed with its own inverse.
  CHECK(cocycle_extract(case_series(deform::SK{kPi / 2})).trivial());
  CHECK(cocycle_oracle(deform::SK{kPi / 2}).trivial());

  for (int n = 2; n <= 6; ++n) {
    const Cocycle got = cocycle_extract(case_series(deform::NN{n}));
    const Cocycle want = cocycle_oracle(deform::NN{n});
    CHECK(got.base_order == n);
    CHECK(same(got.first, want.first));
    CHECK(same(got.second, want.second));
  }

  const Cocycle sq = cocycle_extract(case_series(deform::SQ{1, 3}));
  CHECK(same(sq.first, sp.first));
  CHECK(same(sq.second, sp.second));
  CHECK_THROWS_AS(cocycle_oracle(deform::SQ{2, 5}), NotAvailableError);
}

TEST_CASE("cocycle_numeric") {
  const CocycleEstimate nn = cocycle_numeric(deform::NN{2}, 2.0, {1e-2, 5e-3, 2.5e-3});
  CHECK(std::abs(nn.first - 1.0) < 1e-6);
  CHECK(std::abs(cocycle_numeric(deform::SS{}, 1.5).first - 1.0 / 1.5) < 1e-6);
  CHECK(std::abs(cocycle_numeric(deform::SK{kPi / 4}, Complex(0, 2)).first - Complex(0, -0.5)) < 1e-6);

  // SQ has no printed closed form; the symbolic series is the reference.
  const Cocycle sq = cocycle_extract(case_series(deform::SQ{2, 5}));
  const Complex z(1.7, -0.9);
  const CocycleEstimate est = cocycle_numeric(deform::SQ{2, 5}, z);
  CHECK(std::abs(est.first - sq.first(z)) < 1e-6);
  CHECK(std::abs(est.second - sq.second(z)) < 1e-6);

  CHECK_THROWS_AS(cocycle_numeric(deform::SS{}, 2.0, {1e-2, 5e-3}), ContractError);
  CHECK_THROWS_AS(cocycle_numeric(deform::SS{}, 2.0, {0.1, 5e-3, 1e-3}), ContractError);
  CHECK_THROWS_AS(cocycle_numeric(deform::SS{}, 0.5), ContractError);
}

TEST_CASE("conjugation symmetry of compositions") {
  for (const DeformationCase& c : {DeformationCase{deform::SP{}}, DeformationCase{deform::SQ{2, 5}},
                                   DeformationCase{deform::SK{1.3}}}) {
    for (int j = 0; j < 16; ++j) {
      const Complex w = std::polar(1.5 + 0.1 * j, 0.37 * j + 0.1);
      const Complex a = deformation_eval(c, 0.05, w);
      CHECK(std::abs(deformation_eval(c, 0.05, std::conj(w)) - std::conj(a)) < 1e-10);
    }
  }
}

TEST_CASE("splitting_verify") {
  const SplitReport p = splitting_verify(deform::SQ{1, 3}, 0.05);
  CHECK(p.measured_orders == std::vector<int>{1, 1, 0});
  CHECK(p.orders_match());
  CHECK(p.max_boundary_residual() < 1e-8);

  const SplitReport n3 = splitting_verify(deform::NN{3}, 0.05);
  CHECK(n3.measured_orders == std::vector<int>{2});
  CHECK(n3.max_boundary_residual() < 1e-8);

  const SplitReport k = splitting_verify(deform::SK{1.3}, 0.05);
  CHECK(k.measured_orders == std::vector<int>{1});
  CHECK(k.max_boundary_residual() < 1e-8);
  bool has_tips = false;
  for (const auto& [name, value] : k.boundary_residuals) has_tips = has_tips || name.find("tip") != std::string::npos;
  CHECK(has_tips);

  for (auto [m, n] : {std::pair{1, 4}, std::pair{2, 5}}) {
    const SplitReport q = splitting_verify(deform::SQ{m, n}, 0.05);
    CHECK(q.predicted_orders == std::vector<int>{n - m - 1, 1, m - 1});
    CHECK(q.orders_match());
  }

  CHECK_THROWS_AS(splitting_verify(deform::SS{}, 0.05), ContractError);
  CHECK_THROWS_AS(splitting_verify(deform::NN{3}, 0.5), ContractError);
}

TEST_CASE("winding_number") {
  auto f = [](Complex z) { return z * z * (z - 3.0); };
  CHECK(winding_number(f, 0.0, 1.0, 256) == 2);
  CHECK(winding_number(f, 0.0, 4.0, 256) == 3);
  CHECK_THROWS_AS(winding_number([](Complex z) { return std::pow(z, 20); }, 0.0, 1.0, 16), InconclusiveError);
  CHECK_THROWS_AS(winding_number([](Complex) { return Complex(0.0); }, 0.0, 1.0, 16), InconclusiveError);
}
