#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "schiffer/periods.hpp"

using namespace schiffer;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd st_kernel() {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
  g(1, 1) = 1.0;
  return g;
}

Eigen::MatrixXcd one_by_one(Complex v) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = v;
  return m;
}

Jet jet(std::vector<Complex> c, Complex base = 0.0) { return Jet{base, std::move(c)}; }

}  // namespace

TEST_CASE("kernel checks") {
  const KernelModel k = polynomial_kernel(st_kernel());
  const std::vector<Complex> samples{0.1, Complex(0.3, -0.2), Complex(-0.4, 0.5)};
  CHECK(check_kernel(k, samples).ok());
  CHECK(k.reg(Complex(0.3, 0.2)) == Complex(0.3, 0.2) * Complex(0.3, 0.2));

  KernelModel skew = k;
  skew.eval = [k](Complex s, Complex t) { return k.eval(s, t) + 0.1 * s; };
  CHECK(check_kernel(skew, samples).symmetry > 1e-3);

  KernelModel no_deriv = k;
  no_deriv.deriv = nullptr;
  for (int j = 0; j <= kMaxStencilOrder; ++j) {
    const Complex s(0.5, 0.1), t(-0.2, 0.3);
    CHECK(std::abs(kernel_derivative(no_deriv, s, t, j) - k.deriv(s, t, j)) < 1e-8 * std::abs(k.deriv(s, t, j)) + 1e-10);
  }
  CHECK_THROWS_AS(kernel_derivative(no_deriv, 0.5, 0.0, kMaxStencilOrder + 1), ContractError);

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(polynomial_kernel(bad), ContractError);
}

TEST_CASE("gamma_from_pi examples") {
  const PeriodData d = gamma_from_pi(one_by_one(kI));
  Eigen::MatrixXcd want(2, 2);
  want << 1.0, kI, -kI, 1.0;
  CHECK(max_abs(d.gamma - want) < 1e-14);

  const PeriodData d2 = gamma_from_pi(one_by_one(2.0 * kI));
  CHECK(std::abs(gamma_block(d2.gamma, 0, 0)(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(gamma_block(d2.gamma, 0, 1)(0, 0) - kI) < 1e-14);

  CHECK_THROWS_AS(gamma_from_pi(one_by_one(Complex(0.3, -1.0))), DomainError);
  Eigen::MatrixXcd asym(2, 2);
  asym << kI, 0.5, 0.0, kI;
  CHECK_THROWS_AS(gamma_from_pi(asym), ContractError);
  CHECK_THROWS_AS(pi_from_gamma(Eigen::MatrixXcd::Zero(2, 2)), DomainError);
}

TEST_CASE("basis relations for random period matrices") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int g = 1; g <= 3; ++g) {
    Eigen::MatrixXd x(g, g), c(g, g);
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) c(i, j) = u(rng);
      for (int j = i; j < g; ++j) x(i, j) = x(j, i) = u(rng);
    }
    const Eigen::MatrixXd y = c * c.transpose() + 0.5 * Eigen::MatrixXd::Identity(g, g);
    const Eigen::MatrixXcd pi = x.cast<Complex>() + kI * y.cast<Complex>();
    const PeriodData d = gamma_from_pi(pi);
    const BasisResiduals r = basis_residuals(d);
    CHECK(r.hermitian < 1e-12);
    CHECK(r.alpha_from_gamma < 1e-10);
    CHECK(r.pi_from_gamma < 1e-10);
    CHECK(r.even_from_odd < 1e-10);
    CHECK(max_abs(pi_from_gamma(d.gamma) - pi) < 1e-12);
    // Gamma_ee = conj(Pi) Gamma_oe, written out independently.
    CHECK(max_abs(gamma_block(d.gamma, 1, 1) - pi.conjugate() * gamma_block(d.gamma, 0, 1)) < 1e-10);
  }
}

TEST_CASE("gamma update examples") {
  const Complex p(0.1, -0.2);
  const KernelModel k = polynomial_kernel(one_by_one(0.0));
  const Contour outer(p, 0.5), inner(p, 0.25);
  const std::vector<Jet> constants{jet({2.0, 0.0}, p), jet({Complex(0.5, 1.0), 0.0}, p)};
  const auto fns = DifferentialFns::from_jets(constants);
  const Complex a(0.7, -0.3), b(-0.2, 0.9);

  const GammaUpdate only_a = gamma_update_contour(fns, k, p, LaurentPoly::monomial(a, -1), {}, outer, inner);
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      const Complex w = constants[static_cast<std::size_t>(mu)].coeff(0) * constants[static_cast<std::size_t>(nu)].coeff(0);
      CHECK(std::abs(only_a.order1(mu, nu) - kPi * kI / 2.0 * a * w) < 1e-12);
    }
  }

  const GammaUpdate only_b = gamma_update_contour(fns, k, p, {}, LaurentPoly::monomial(b, -1), outer, inner);
  CHECK(max_abs(only_b.order1) < 1e-14);
  const Complex w01 = constants[0].coeff(0) * constants[1].coeff(0);
  CHECK(std::abs(only_b.order2(0, 1) - kPi * kI / 4.0 * b * w01) < 1e-12);

  const DifferentialJets unit{0.0, {jet({1.0, 0.0})}, 0.0, std::nullopt};
  const GammaUpdate u = gamma_update_closed(1.0, 0.0, 1, unit);
  CHECK(std::abs(u.order1(0, 0) - kPi * kI / 2.0) < 1e-15);
  CHECK(std::abs(u.order2(0, 0)) < 1e-15);

  const DifferentialJets pair{0.0, {jet({1.0, 2.0}), jet({1.0, 0.0})}, 0.0, std::nullopt};
  CHECK(std::abs(gamma_update_closed(0.0, 1.0, 2, pair).order2(0, 1) - kPi * kI / 4.0 * 2.0) < 1e-15);

  const DifferentialJets slope{0.0, {jet({1.0, 1.0})}, 1.0, std::nullopt};
  CHECK(std::abs(gamma_update_closed(1.0, 0.0, 1, slope).order2(0, 0) - (-kPi * kPi * kI / 2.0 + kPi * kI / 4.0)) < 1e-14);

  CHECK_THROWS_AS(gamma_update_closed(1.0, 1.0, 3, slope), ContractError);
  CHECK_THROWS_AS(gamma_update_contour(fns, k, p, {}, {}, inner, outer), ContractError);
}

TEST_CASE("gamma update paths agree") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int m = 1; m <= 4; ++m) {
    const Complex p(0.1 * u(rng), 0.1 * u(rng));
    Eigen::MatrixXcd g(2, 2);
    g(0, 0) = Complex(u(rng), u(rng));
    g(0, 1) = g(1, 0) = Complex(u(rng), u(rng));
    g(1, 1) = Complex(u(rng), u(rng));
    const KernelModel k = polynomial_kernel(g);
    std::vector<Jet> jets;
    for (int i = 0; i < 3; ++i) {
      std::vector<Complex> c;
      for (int d = 0; d <= 4; ++d) c.push_back({u(rng), u(rng)});
      jets.push_back(jet(c, p));
    }
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
    const GammaUpdate closed = gamma_update_closed(a, b, m, {p, jets, k.reg(p), std::nullopt});
    const GammaUpdate contour = gamma_update_contour(DifferentialFns::from_jets(jets), k, p, LaurentPoly::monomial(a, -1),
                                                     LaurentPoly::monomial(b, -m), Contour(p, 0.5), Contour(p, 0.25));
    CHECK(max_abs(closed.order1 - contour.order1) < 1e-10);
    CHECK(max_abs(closed.order2 - contour.order2) < 1e-10);
    CHECK(max_abs(closed.order2 - closed.order2.transpose()) < 1e-12);
  }
}

TEST_CASE("isoperiodic residues") {
  CHECK(isoperiodic_residues(jet({0.0, 1.0}), 1) == Complex(0.0));
  CHECK(isoperiodic_residues(jet({0.0, 0.0, 1.0}), 2) == Complex(0.0));
  CHECK(isoperiodic_residues(jet({0.0, 1.0}), 2) == Complex(1.0));
  CHECK(isoperiodic_residues(jet({0.0, 1.0, 3.0}), 2, jet({2.0, 5.0, 0.0})) == Complex(2.0));
  CHECK_THROWS_AS(isoperiodic_residues(jet({0.0, 1.0}), 0), ContractError);
  CHECK_THROWS_AS(isoperiodic_residues(jet({0.0, 1.0}), 3), ContractError);
}

TEST_CASE("omega_variation_closed") {
  const KernelModel pole = polynomial_kernel(one_by_one(0.0));
  const auto [w1, w2] = omega_variation_closed(1.0, jet({1.0, 0.0}), 0.0, pole, 0.5);
  CHECK(std::abs(w1 + 4.0) < 1e-12);
  CHECK(std::abs(w2) < 1e-12);
  const auto [z1, z2] = omega_variation_closed(0.0, jet({1.0, 3.0}), 2.0, pole, 0.5);
  CHECK(z1 == Complex(0.0));
  CHECK(z2 == Complex(0.0));
  CHECK_THROWS_AS(omega_variation_closed(1.0, jet({1.0, 0.0}), 0.0, pole, 0.0), DomainError);

  // Central differences agree with the analytic derivative.
  const KernelModel k = polynomial_kernel(st_kernel());
  KernelModel fd = k;
  fd.deriv = nullptr;
  const Jet w = jet({1.0, Complex(0.4, -0.2)});
  const auto exact = omega_variation_closed(0.3, w, 0.0, k, Complex(0.6, 0.2));
  const auto approx = omega_variation_closed(0.3, w, 0.0, fd, Complex(0.6, 0.2));
  CHECK(std::abs(exact.second - approx.second) < 1e-8);
}

TEST_CASE("omega_expansion") {
  const KernelModel k = polynomial_kernel(st_kernel());
  const AnalyticFn w = [](Complex z) { return 1.0 / (1.0 - 2.0 * z); };
  const Complex q(0.35, 0.1);

  const auto none = omega_expansion(k, w, {}, 3, Contour(0.0, 0.1), q);
  CHECK(std::abs(none.terms[0] - w(q)) < 1e-15);
  for (int j = 1; j <= 3; ++j) CHECK(std::abs(none.terms[static_cast<std::size_t>(j)]) < 1e-15);

  const double a = 0.1;
  const auto ex = omega_expansion(k, w, LaurentPoly::monomial(a, -1), 2, Contour(0.0, 0.1, 512), q);
  CHECK(std::abs(ex.terms[1] + kPi * a * k.eval(q, 0.0) * w(0.0)) < 1e-12);
  const auto closed = omega_variation_closed(a, jet({1.0, 2.0}), k.reg(0.0), k, q);
  CHECK(std::abs(closed.first - ex.terms[1]) < 1e-8);
  CHECK(std::abs(closed.second - ex.terms[2]) < 1e-8);

  SUBCASE("fixed-point residual slope") {
    const std::vector<double> eps{0.02, 0.01, 0.005};
    for (int n = 1; n <= 4; ++n) {
      const auto e = omega_expansion(k, w, LaurentPoly::monomial(a, -1), n, Contour(0.0, 0.1, 512), 0.35);
      std::vector<double> res;
      for (double x : eps) res.push_back(std::abs(e.residual(x)));
      CHECK(loglog_slope(eps, res) == doctest::Approx(n + 1).epsilon(0.2 / (n + 1)));
    }
  }

  SUBCASE("constant omega terminates after one term") {
    const auto e = omega_expansion(k, [](Complex) { return Complex(1.0); }, LaurentPoly::monomial(a, -1), 4,
                                   Contour(0.0, 0.1, 512), 0.35);
    for (int j = 2; j <= 4; ++j) CHECK(std::abs(e.terms[static_cast<std::size_t>(j)]) < 1e-12);
    for (double x : {0.02, 0.01, 0.005}) CHECK(std::abs(e.residual(x)) < 1e-14);
  }

  CHECK_THROWS_AS(omega_expansion(k, w, {}, 2, Contour(0.0, 0.2), 0.35), ContractError);
  KernelModel fd = k;
  fd.deriv = nullptr;
  CHECK_THROWS_AS(omega_expansion(fd, w, LaurentPoly::monomial(a, -1), kMaxStencilOrder + 2, Contour(0.0, 0.1), 0.5),
                  ContractError);
}

TEST_CASE("wronskian") {
  CHECK(std::abs(wronskian({jet({1.0, 0.0}), jet({0.0, 1.0})}) - 1.0) < 1e-15);
  CHECK(std::abs(wronskian({jet({1.0, 0.0}), jet({3.0, 0.0})})) < 1e-15);
  const std::vector<Complex> f{1.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  CHECK(std::abs(wronskian(hyperelliptic_jets(f, 0.0, 1.0, 2)) - 1.0) < 1e-14);
  CHECK_THROWS_AS(wronskian({jet({1.0}), jet({0.0})}), ContractError);
}

TEST_CASE("schiffer rank") {
  const std::vector<Complex> f{1.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  const Complex x0(0.7, 0.3);
  const Complex y0 = std::sqrt(std::pow(x0, 5) + 1.0);
  const auto at0 = hyperelliptic_quadratic_jets(f, 0.0, 1.0, 4);
  const auto atx = hyperelliptic_quadratic_jets(f, x0, y0, 4);
  REQUIRE(at0.size() == 3);
  std::vector<std::vector<Jet>> jets;
  for (std::size_t j = 0; j < 3; ++j) jets.push_back({at0[j], atx[j]});
  CHECK(schiffer_rank({{0.0, {1}}, {x0, {1, 2}}}, jets) == 3);

  std::vector<std::vector<Jet>> doubled;
  for (std::size_t j = 0; j < 3; ++j) doubled.push_back({at0[j], atx[j], atx[j]});
  CHECK(schiffer_rank({{0.0, {1}}, {x0, {1, 2}}, {x0, {1, 2}}}, doubled) == 3);
  CHECK(schiffer_rank({{x0, {1, 1}}}, {{atx[0]}, {atx[1]}, {atx[2]}}) == 1);

  CHECK(schiffer_rank({{0.0, {1}}}, {{jet({0.0, 1.0, 2.0})}}) == 0);
}

TEST_CASE("hyperelliptic jets") {
  const std::vector<Complex> plus{1.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  const auto j = hyperelliptic_jets(plus, 0.0, 1.0, 3);
  CHECK(j.size() == 2);
  CHECK(std::abs(j[0].coeff(0) - 1.0) < 1e-15);
  CHECK(std::abs(j[0].coeff(1)) < 1e-15);

  const std::vector<Complex> minus{-1.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  CHECK(std::abs(hyperelliptic_jets(minus, 0.0, kI, 2)[0].coeff(0) + kI) < 1e-15);

  CHECK_THROWS_AS(hyperelliptic_jets(plus, 0.0, 2.0, 2), DomainError);
  CHECK_THROWS_AS(hyperelliptic_jets(minus, 1.0, 0.0, 2), DomainError);

  // Compare with Cauchy coefficients of x^k / y along the branch through (x0, y0).
  const Complex x0(0.4, -0.6);
  const Complex y0 = -std::sqrt(std::pow(x0, 5) + 1.0);
  const auto series = hyperelliptic_jets(plus, x0, y0, 5);
  for (int k = 0; k < 2; ++k) {
    const Jet ref = cauchy_jet(
        [&](Complex x) { return std::pow(x, k) / (y0 * std::sqrt((std::pow(x, 5) + 1.0) / (std::pow(x0, 5) + 1.0))); }, x0,
        0.1, 5);
    for (int d = 0; d <= 5; ++d) CHECK(std::abs(series[static_cast<std::size_t>(k)].coeff(d) - ref.coeff(d)) < 1e-10);
  }

  const std::vector<Complex> genus3{1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  CHECK(hyperelliptic_genus(genus3) == 3);
  CHECK(hyperelliptic_quadratic_jets(genus3, 0.0, 1.0, 3).size() == 6);
  CHECK_THROWS_AS(hyperelliptic_genus({1.0, 1.0}), ContractError);
}

TEST_CASE("bperiod_variation") {
  Eigen::VectorXcd a1(1);
  a1 << 1.0;
  const Complex gam(0.3, -0.8);
  CHECK(std::abs(bperiod_variation(a1, one_by_one(kI), one_by_one(gam))(0) + 2.0 * kI * gam) < 1e-15);
  CHECK(bperiod_variation(a1, one_by_one(kI), one_by_one(0.0)).norm() == 0.0);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd pi(2, 2), gd(2, 2);
  pi << Complex(0.2, 1.5), Complex(0.3, 0.2), Complex(0.3, 0.2), Complex(-0.1, 1.1);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) gd(i, j) = Complex(u(rng), u(rng));
  }
  Eigen::VectorXcd a(2);
  a << Complex(u(rng), u(rng)), Complex(u(rng), u(rng));
  const Eigen::MatrixXcd y = pi.imag().cast<Complex>();
  const Eigen::VectorXcd assembled = (-(a.transpose() * y * gd * pi) + a.transpose() * y * gd * pi.conjugate()).transpose();
  CHECK((bperiod_variation(a, pi, gd) - assembled).norm() < 1e-13);
}

TEST_CASE("siegel_pairing") {
  Eigen::VectorXcd one(1);
  one << 1.0;
  const Eigen::MatrixXd y1 = Eigen::MatrixXd::Identity(1, 1);
  CHECK(std::abs(siegel_pairing(one, one, y1) - 4 * kPi * kPi) < 1e-12);
  CHECK(siegel_pairing(Eigen::VectorXcd::Zero(1), one, y1) == Complex(0.0));

  Eigen::MatrixXd y(2, 2);
  y << 1.3, 0.4, 0.4, 0.9;
  Eigen::VectorXcd al(2);
  al << Complex(0.3, -0.7), Complex(1.1, 0.2);
  const Complex s = siegel_pairing(al, al, y);
  CHECK(std::abs(s.imag()) < 1e-12);
  CHECK(s.real() >= 0.0);
  CHECK_THROWS_AS(siegel_pairing(al, al, -y), DomainError);
}
