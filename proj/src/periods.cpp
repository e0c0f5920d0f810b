#include "schiffer/periods.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace schiffer {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Weights w_k with sum_k f(z_k) w_k the trapezoid value of the closed integral.
std::vector<Complex> quadrature_weights(const Contour& c) {
  std::vector<Complex> w(static_cast<std::size_t>(c.samples()));
  for (int k = 0; k < c.samples(); ++k) {
    w[static_cast<std::size_t>(k)] = (c.node(k) - c.center()) * (2.0 * kPi * kI / static_cast<double>(c.samples()));
  }
  return w;
}

std::vector<Complex> series_mul(const std::vector<Complex>& a, const std::vector<Complex>& b, int depth) {
  std::vector<Complex> out(static_cast<std::size_t>(depth) + 1);
  for (int i = 0; i <= depth && i < static_cast<int>(a.size()); ++i) {
    for (int j = 0; i + j <= depth && j < static_cast<int>(b.size()); ++j) {
      out[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

std::vector<Complex> series_inverse(const std::vector<Complex>& a, int depth) {
  std::vector<Complex> out(static_cast<std::size_t>(depth) + 1);
  out[0] = 1.0 / a[0];
  for (int k = 1; k <= depth; ++k) {
    Complex s{};
    for (int i = 1; i <= k && i < static_cast<int>(a.size()); ++i) {
      s += a[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(k - i)];
    }
    out[static_cast<std::size_t>(k)] = -s / a[0];
  }
  return out;
}

// Square root with leading coefficient y0, where y0^2 = a[0].
std::vector<Complex> series_sqrt(const std::vector<Complex>& a, Complex y0, int depth) {
  std::vector<Complex> y(static_cast<std::size_t>(depth) + 1);
  y[0] = y0;
  for (int k = 1; k <= depth; ++k) {
    Complex s = k < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(k)] : Complex{};
    for (int i = 1; i < k; ++i) s -= y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(k - i)];
    y[static_cast<std::size_t>(k)] = s / (2.0 * y0);
  }
  return y;
}

// Coefficients of x^k in powers of t = x - x0.
std::vector<Complex> shifted_power(int k, Complex x0, int depth) {
  std::vector<Complex> out(static_cast<std::size_t>(depth) + 1);
  double binom = 1.0;
  for (int j = 0; j <= std::min(k, depth); ++j) {
    out[static_cast<std::size_t>(j)] = binom * std::pow(x0, k - j);
    binom = binom * (k - j) / (j + 1);
  }
  return out;
}

struct CurveSeries {
  std::vector<Complex> inv_y;  // 1/y
  std::vector<Complex> inv_f;  // 1/y^2
};

CurveSeries curve_series(const std::vector<Complex>& f, Complex x0, Complex y0, int depth) {
  if (depth < 0) throw ContractError("hyperelliptic jets need depth >= 0");
  std::vector<Complex> shifted(static_cast<std::size_t>(depth) + 1);
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    const auto p = shifted_power(i, x0, depth);
    for (int j = 0; j <= depth; ++j) shifted[static_cast<std::size_t>(j)] += f[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(j)];
  }
  const Complex f0 = shifted[0];
  if (std::abs(f0) <= 1e-14) {
    std::ostringstream os;
    os << "hyperelliptic jets: x0 = " << x0 << " is a branch point";
    throw DomainError(os.str());
  }
  if (std::abs(y0 * y0 - f0) > 1e-12 * std::max(1.0, std::abs(f0))) {
    std::ostringstream os;
    os << "hyperelliptic jets: y0^2 = " << y0 * y0 << " differs from f(x0) = " << f0;
    throw DomainError(os.str());
  }
  const auto y = series_sqrt(shifted, y0, depth);
  return {series_inverse(y, depth), series_inverse(shifted, depth)};
}

}  // namespace

KernelModel polynomial_kernel(const Eigen::MatrixXcd& g) {
  if (g.rows() != g.cols()) throw ContractError("polynomial kernel needs a square coefficient matrix");
  if (max_abs(g - g.transpose()) > 1e-14) throw ContractError("polynomial kernel coefficients must be symmetric");
  const Eigen::MatrixXcd coeffs = g;
  auto poly = [coeffs](Complex s, Complex t, int j) {
    // d^j/dt^j sum G_ab s^a t^b
    Complex sum{};
    Complex sa = 1.0;
    for (Eigen::Index a = 0; a < coeffs.rows(); ++a, sa *= s) {
      for (Eigen::Index b = j; b < coeffs.cols(); ++b) {
        double falling = 1.0;
        for (int i = 0; i < j; ++i) falling *= static_cast<double>(b - i);
        sum += coeffs(a, b) * sa * falling * std::pow(t, static_cast<int>(b) - j);
      }
    }
    return sum;
  };
  KernelModel k;
  k.eval = [poly](Complex s, Complex t) { return 1.0 / (kPi * (s - t) * (s - t)) + poly(s, t, 0); };
  k.reg = [poly](Complex p) { return poly(p, p, 0); };
  k.deriv = [poly](Complex s, Complex t, int j) {
    // d^j/dt^j (s - t)^-2 = (j + 1)! (s - t)^{-j-2}
    return factorial(j + 1) / (kPi * std::pow(s - t, j + 2)) + poly(s, t, j);
  };
  return k;
}

KernelCheck check_kernel(const KernelModel& kernel, const std::vector<Complex>& samples, double h) {
  KernelCheck out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      out.symmetry = std::max(
          out.symmetry, std::abs(kernel.eval(samples[i], samples[j]) - kernel.eval(samples[j], samples[i])));
    }
    const Complex p = samples[i];
    auto scaled = [&](double d) { return d * d * kernel.eval(p, p + d); };
    const Complex pole = (4.0 * scaled(h / 2) - scaled(h)) / 3.0;
    out.pole = std::max(out.pole, std::abs(pole - 1.0 / kPi));
    const Complex centred = 0.5 * (kernel.eval(p, p + h) + kernel.eval(p, p - h)) - 1.0 / (kPi * h * h);
    out.consistency = std::max(out.consistency, std::abs(centred - kernel.reg(p)));
  }
  return out;
}

Complex kernel_derivative(const KernelModel& kernel, Complex s, Complex t, int j, double h) {
  if (j < 0) throw ContractError("kernel derivative order must be non-negative");
  if (j == 0) return kernel.eval(s, t);
  if (kernel.deriv) return kernel.deriv(s, t, j);
  if (j > kMaxStencilOrder) {
    throw ContractError("kernel derivative of order " + std::to_string(j) + " exceeds the stencil limit " +
                        std::to_string(kMaxStencilOrder));
  }
  const double rho = std::min(h, std::abs(s - t) / 3.0);
  return cauchy_derivative([&](Complex u) { return kernel.eval(s, u); }, t, j, rho, 64);
}

Eigen::MatrixXcd gamma_block(const Eigen::MatrixXcd& gamma, int row_parity, int col_parity) {
  const Eigen::Index g = gamma.rows() / 2;
  Eigen::MatrixXcd out(g, g);
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index j = 0; j < g; ++j) out(i, j) = gamma(2 * i + row_parity, 2 * j + col_parity);
  }
  return out;
}

namespace {

struct BasisCoefficients {
  Eigen::MatrixXd y;
  Eigen::MatrixXcd odd;   // dZ_odd = odd * alpha
  Eigen::MatrixXcd even;  // dZ_even = even * alpha
};

BasisCoefficients basis_coefficients(const Eigen::MatrixXcd& pi) {
  if (pi.rows() != pi.cols() || pi.rows() == 0) throw ContractError("Pi must be a non-empty square matrix");
  if (max_abs(pi - pi.transpose()) > 1e-12 * std::max(1.0, max_abs(pi))) {
    throw ContractError("Pi must be symmetric");
  }
  BasisCoefficients c;
  c.y = pi.imag();
  Eigen::LLT<Eigen::MatrixXd> llt(c.y);
  if (llt.info() != Eigen::Success) throw DomainError("Im Pi is not positive definite");
  const Eigen::MatrixXd y_inv = llt.solve(Eigen::MatrixXd::Identity(c.y.rows(), c.y.cols()));
  c.odd = -y_inv.cast<Complex>();
  c.even = -pi.conjugate() * y_inv.cast<Complex>();
  return c;
}

}  // namespace

PeriodData gamma_from_pi(const Eigen::MatrixXcd& pi) {
  const auto c = basis_coefficients(pi);
  const Eigen::Index g = pi.rows();
  Eigen::MatrixXcd coeffs(2 * g, g);
  for (Eigen::Index mu = 0; mu < g; ++mu) {
    coeffs.row(2 * mu) = c.odd.row(mu);
    coeffs.row(2 * mu + 1) = c.even.row(mu);
  }
  // Gamma_jk = (i/2) int dZ_j ^ conj(dZ_k) = C (Im Pi) C^H
  PeriodData out;
  out.g = static_cast<int>(g);
  out.pi = pi;
  out.gamma = coeffs * c.y.cast<Complex>() * coeffs.adjoint();
  return out;
}

Eigen::MatrixXcd pi_from_gamma(const Eigen::MatrixXcd& gamma) {
  if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0 || gamma.rows() == 0) {
    throw ContractError("Gamma must be a non-empty 2g x 2g matrix");
  }
  const Eigen::MatrixXcd oo = gamma_block(gamma, 0, 0);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(oo);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw DomainError("Gamma_oo is singular");
  return lu.solve(gamma_block(gamma, 0, 1));
}

BasisResiduals basis_residuals(const PeriodData& data) {
  const auto c = basis_coefficients(data.pi);
  const Eigen::Index g = data.pi.rows();
  const Eigen::MatrixXcd oo = gamma_block(data.gamma, 0, 0);
  BasisResiduals r;
  r.hermitian = max_abs(data.gamma - data.gamma.adjoint());
  r.alpha_from_gamma = max_abs(-oo.fullPivLu().solve(c.odd) - Eigen::MatrixXcd::Identity(g, g));
  r.pi_from_gamma = max_abs(pi_from_gamma(data.gamma) - data.pi);
  // dZ_even = conj(Pi) dZ_odd, read off the B rows of Gamma.
  r.even_from_odd = std::max(max_abs(gamma_block(data.gamma, 1, 0) - data.pi.conjugate() * oo),
                             max_abs(gamma_block(data.gamma, 1, 1) - data.pi.conjugate() * gamma_block(data.gamma, 0, 1)));
  return r;
}

DifferentialFns DifferentialFns::from_jets(const std::vector<Jet>& jets) {
  DifferentialFns out;
  for (const auto& j : jets) {
    out.omegas.push_back([j](Complex z) { return j(z); });
    out.derivatives.push_back([j](Complex z) { return j.derivative(z); });
  }
  return out;
}

GammaUpdate gamma_update_contour(const DifferentialFns& omegas, const KernelModel& kernel, Complex p,
                                 const LaurentPoly& r1, const LaurentPoly& r2, const Contour& outer,
                                 const Contour& inner) {
  if (!inner.strictly_inside(outer)) throw ContractError("gamma_update_contour: inner contour must lie inside outer");
  if (!(std::abs(p - inner.center()) < inner.radius())) {
    throw ContractError("gamma_update_contour: inner contour must enclose the cocycle pole");
  }
  if (omegas.omegas.size() != omegas.derivatives.size()) {
    throw ContractError("gamma_update_contour: every differential needs a derivative");
  }
  const auto g = static_cast<Eigen::Index>(omegas.omegas.size());
  const auto outer_nodes = outer.nodes();
  const auto inner_nodes = inner.nodes();
  const auto wo = quadrature_weights(outer);
  const auto wi = quadrature_weights(inner);
  const std::size_t mo = outer_nodes.size();
  const std::size_t mi = inner_nodes.size();

  Eigen::MatrixXcd om(g, static_cast<Eigen::Index>(mo)), dom(g, static_cast<Eigen::Index>(mo));
  std::vector<Complex> r1o(mo), r2o(mo);
  for (std::size_t k = 0; k < mo; ++k) {
    const Complex z = outer_nodes[k];
    r1o[k] = r1(z - p);
    r2o[k] = r2(z - p);
    for (Eigen::Index mu = 0; mu < g; ++mu) {
      om(mu, static_cast<Eigen::Index>(k)) = omegas.omegas[static_cast<std::size_t>(mu)](z);
      dom(mu, static_cast<Eigen::Index>(k)) = omegas.derivatives[static_cast<std::size_t>(mu)](z);
    }
  }
  // inner_int(mu, k) = closed integral over the inner contour of r1 Lambda(s, t_k) omega_mu(s) ds
  Eigen::MatrixXcd inner_int = Eigen::MatrixXcd::Zero(g, static_cast<Eigen::Index>(mo));
  {
    Eigen::MatrixXcd weighted(g, static_cast<Eigen::Index>(mi));
    for (std::size_t j = 0; j < mi; ++j) {
      const Complex s = inner_nodes[j];
      const Complex factor = r1(s - p) * wi[j];
      for (Eigen::Index mu = 0; mu < g; ++mu) {
        weighted(mu, static_cast<Eigen::Index>(j)) = factor * omegas.omegas[static_cast<std::size_t>(mu)](s);
      }
    }
    Eigen::MatrixXcd lam(static_cast<Eigen::Index>(mi), static_cast<Eigen::Index>(mo));
    for (std::size_t j = 0; j < mi; ++j) {
      for (std::size_t k = 0; k < mo; ++k) {
        lam(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = kernel.eval(inner_nodes[j], outer_nodes[k]);
      }
    }
    inner_int = weighted * lam;
  }

  GammaUpdate out{Eigen::MatrixXcd::Zero(g, g), Eigen::MatrixXcd::Zero(g, g)};
  for (Eigen::Index mu = 0; mu < g; ++mu) {
    for (Eigen::Index nu = 0; nu < g; ++nu) {
      Complex first{}, nested{}, local{};
      for (std::size_t k = 0; k < mo; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        first += r1o[k] * om(mu, kk) * om(nu, kk) * wo[k];
        nested += r1o[k] * om(nu, kk) * inner_int(mu, kk) * wo[k];
        local += (r2o[k] * om(mu, kk) * om(nu, kk) + r1o[k] * r1o[k] * om(mu, kk) * dom(nu, kk)) * wo[k];
      }
      out.order1(mu, nu) = first / 4.0;
      out.order2(mu, nu) = kI / 8.0 * nested + local / 8.0;
    }
  }
  return out;
}

GammaUpdate gamma_update_closed(Complex a, Complex b, int m, const DifferentialJets& jets) {
  if (m < 1) throw ContractError("gamma_update_closed requires m >= 1");
  const int need = std::max(1, m - 1);
  for (const auto& j : jets.omegas) {
    if (j.depth() < need) {
      throw ContractError("gamma_update_closed: jets must have depth >= " + std::to_string(need));
    }
  }
  const auto g = static_cast<Eigen::Index>(jets.omegas.size());
  GammaUpdate out{Eigen::MatrixXcd::Zero(g, g), Eigen::MatrixXcd::Zero(g, g)};
  for (Eigen::Index mu = 0; mu < g; ++mu) {
    for (Eigen::Index nu = 0; nu < g; ++nu) {
      const Jet& wm = jets.omegas[static_cast<std::size_t>(mu)];
      const Jet& wn = jets.omegas[static_cast<std::size_t>(nu)];
      const Complex prod = wm.coeff(0) * wn.coeff(0);
      Complex coef{};
      for (int i = 0; i <= m - 1; ++i) coef += wm.coeff(i) * wn.coeff(m - 1 - i);
      out.order1(mu, nu) = kPi * kI / 2.0 * a * prod;
      out.order2(mu, nu) = -kPi * kPi * kI / 2.0 * a * a * jets.lambda * prod +
                           kPi * kI / 4.0 * (a * a * wm.coeff(1) * wn.coeff(1) + b * coef);
    }
  }
  return out;
}

Complex isoperiodic_residues(const Jet& omega, int k, const std::optional<Jet>& psi) {
  if (k < 1) throw ContractError("isoperiodic_residues requires k >= 1");
  const Jet probe = psi.value_or(Jet{omega.base, {1.0}});
  if (k - 1 > omega.depth()) {
    throw ContractError("isoperiodic_residues: k = " + std::to_string(k) + " needs jet depth >= " + std::to_string(k - 1));
  }
  if (probe.base != omega.base) throw ContractError("isoperiodic_residues: jets have different base points");
  Complex sum{};
  for (int i = 0; i <= k - 1; ++i) sum += omega.coeff(i) * probe.coeff(k - 1 - i);
  return sum;
}

std::pair<Complex, Complex> omega_variation_closed(Complex a, const Jet& omega, Complex lambda,
                                                   const KernelModel& kernel, Complex q, double h) {
  const Complex p = omega.base;
  if (q == p) throw DomainError("omega_variation_closed: q coincides with p");
  if (omega.depth() < 1) throw ContractError("omega_variation_closed needs a jet of depth >= 1");
  const Complex lam = kernel.eval(q, p);
  Complex dlam;
  if (kernel.deriv) {
    dlam = kernel.deriv(q, p, 1);
  } else {
    auto f = [&](double d) { return kernel.eval(q, p + d); };
    dlam = (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
  }
  const Complex w0 = omega.coeff(0);
  const Complex w1 = omega.coeff(1);
  return {-kPi * a * lam * w0, kPi * kPi * a * a * lam * lambda * w0 - kPi / 2.0 * a * a * dlam * w1};
}

OmegaExpansion omega_expansion(const KernelModel& kernel, const AnalyticFn& omega, const LaurentPoly& r, int n,
                               const Contour& base, Complex q) {
  if (n < 0) throw ContractError("omega_expansion requires n >= 0");
  const Complex c = base.center();
  const double rho0 = base.radius();
  const int m = base.samples();
  if (!(std::abs(q - c) > 2.0 * rho0)) {
    throw ContractError("omega_expansion: q must lie outside the residual contour of radius 2 rho_0");
  }
  if (n > kMaxStencilOrder && !kernel.deriv) {
    throw ContractError("omega_expansion: order " + std::to_string(n) + " needs kernel derivatives beyond the stencil");
  }

  std::vector<Contour> contours;
  OmegaExpansion out;
  for (int k = 1; k <= n; ++k) {
    const double radius = rho0 * (1.0 + static_cast<double>(k) / (n + 1));
    contours.emplace_back(c, radius, m);
    out.radii.push_back(radius);
  }
  const Contour residual_contour(c, 2.0 * rho0, m);

  // Targets: nodes of contours 1..n, then the residual contour, then q.
  std::vector<Complex> targets;
  std::vector<int> level;  // contour index (1-based), n + 1 for the residual contour and q
  for (int k = 1; k <= n; ++k) {
    for (const auto& z : contours[static_cast<std::size_t>(k - 1)].nodes()) {
      targets.push_back(z);
      level.push_back(k);
    }
  }
  const std::size_t residual_begin = targets.size();
  for (const auto& z : residual_contour.nodes()) {
    targets.push_back(z);
    level.push_back(n + 1);
  }
  targets.push_back(q);
  level.push_back(n + 1);
  const std::size_t nt = targets.size();

  // values[k][i] = omega^(k)(targets[i]) for targets outside contour k.
  std::vector<std::vector<Complex>> values(static_cast<std::size_t>(n) + 1, std::vector<Complex>(nt));
  for (std::size_t i = 0; i < nt; ++i) values[0][i] = omega(targets[i]);

  std::vector<double> inv_fact(static_cast<std::size_t>(n) + 3);
  for (std::size_t i = 0; i < inv_fact.size(); ++i) inv_fact[i] = 1.0 / factorial(static_cast<int>(i));

  for (int k = 1; k <= n; ++k) {
    const std::size_t offset = static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(m);
    const auto w = quadrature_weights(contours[static_cast<std::size_t>(k - 1)]);
    for (std::size_t i = 0; i < nt; ++i) {
      if (level[i] <= k) continue;
      Complex sum{};
      for (int j = 0; j < m; ++j) {
        const std::size_t node = offset + static_cast<std::size_t>(j);
        const Complex s = targets[node];
        const Complex rs = r(s - c);
        Complex rpow = 1.0;
        Complex inner{};
        for (int mm = 1; mm <= k; ++mm) {
          rpow *= rs;
          inner += rpow * inv_fact[static_cast<std::size_t>(mm)] * kernel_derivative(kernel, targets[i], s, mm - 1) *
                   values[static_cast<std::size_t>(k - mm)][node];
        }
        sum += inner * w[static_cast<std::size_t>(j)];
      }
      values[static_cast<std::size_t>(k)][i] = kI / 2.0 * sum;
    }
  }

  for (int k = 0; k <= n; ++k) out.terms.push_back(values[static_cast<std::size_t>(k)][nt - 1]);

  // Residual of the fixed-point equation for the partial sum S_n. The full
  // operator sum over m >= 1 is the integral of Lambda(q, .) from t to t + eps r(t).
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  const auto wres = quadrature_weights(residual_contour);
  const std::size_t mr = static_cast<std::size_t>(m);
  std::vector<Complex> nodes_res(mr), r_res(mr);
  std::vector<std::vector<Complex>> terms_res(mr, std::vector<Complex>(static_cast<std::size_t>(n) + 1));
  for (std::size_t j = 0; j < mr; ++j) {
    nodes_res[j] = targets[residual_begin + j];
    r_res[j] = r(nodes_res[j] - c);
    for (int k = 0; k <= n; ++k) terms_res[j][static_cast<std::size_t>(k)] = values[static_cast<std::size_t>(k)][residual_begin + j];
  }
  const std::vector<Complex> terms_q = out.terms;
  const auto eval = kernel.eval;
  out.residual = [=](double eps) {
    auto partial = [&](const std::vector<Complex>& t) {
      Complex s{}, e = 1.0;
      for (const auto& v : t) {
        s += e * v;
        e *= eps;
      }
      return s;
    };
    const auto& x = Gauss::abscissa();
    const auto& gw = Gauss::weights();
    Complex integral{};
    for (std::size_t j = 0; j < mr; ++j) {
      const Complex t = nodes_res[j];
      const Complex h = eps * r_res[j];
      if (!(std::abs(h) < 0.5 * std::abs(q - t))) {
        throw DomainError("omega_expansion residual: eps r(t) reaches too close to q");
      }
      // Even rule: each stored abscissa stands for a symmetric pair.
      Complex shift{};
      for (std::size_t i = 0; i < x.size(); ++i) {
        shift += gw[i] * (eval(q, t + h * (0.5 + 0.5 * x[i])) + eval(q, t + h * (0.5 - 0.5 * x[i])));
      }
      integral += 0.5 * h * shift * partial(terms_res[j]) * wres[j];
    }
    return partial(terms_q) - terms_q[0] - kI / 2.0 * integral;
  };
  return out;
}

double loglog_slope(const std::vector<double>& eps, const std::vector<double>& values) {
  if (eps.size() != values.size() || eps.size() < 2) throw ContractError("loglog_slope needs matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double x = std::log(eps[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Complex wronskian(const std::vector<Jet>& jets) {
  const auto g = static_cast<Eigen::Index>(jets.size());
  if (g == 0) throw ContractError("wronskian needs at least one jet");
  Eigen::MatrixXcd w(g, g);
  for (Eigen::Index s = 0; s < g; ++s) {
    const Jet& j = jets[static_cast<std::size_t>(s)];
    if (j.depth() < g - 1) throw ContractError("wronskian: jets must have depth >= " + std::to_string(g - 1));
    for (Eigen::Index k = 0; k < g; ++k) w(s, k) = j.derivative_at_base(static_cast<int>(k));
  }
  return w.determinant();
}

Eigen::MatrixXcd schiffer_pairing_matrix(const std::vector<SchifferSite>& sites,
                                         const std::vector<std::vector<Jet>>& jets) {
  std::size_t rows = 0;
  for (const auto& s : sites) rows += s.exponents.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(jets.size()));
  for (std::size_t col = 0; col < jets.size(); ++col) {
    if (jets[col].size() != sites.size()) {
      throw ContractError("schiffer_rank: quadratic differential " + std::to_string(col) + " needs one jet per site");
    }
    Eigen::Index row = 0;
    for (std::size_t si = 0; si < sites.size(); ++si) {
      const Jet& jet = jets[col][si];
      if (jet.base != sites[si].point) {
        throw ContractError("schiffer_rank: jet " + std::to_string(col) + " is not based at site " + std::to_string(si));
      }
      for (int k : sites[si].exponents) {
        if (k < 1 || k - 1 > jet.depth()) {
          throw ContractError("schiffer_rank: exponent " + std::to_string(k) + " needs jet depth >= " +
                              std::to_string(k - 1));
        }
        out(row++, static_cast<Eigen::Index>(col)) = jet.coeff(k - 1);
      }
    }
  }
  return out;
}

int schiffer_rank(const std::vector<SchifferSite>& sites, const std::vector<std::vector<Jet>>& jets,
                  double rel_threshold) {
  const Eigen::MatrixXcd m = schiffer_pairing_matrix(sites, jets);
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_threshold * sv(0)) ++rank;
  }
  return rank;
}

int hyperelliptic_genus(const std::vector<Complex>& f) {
  int deg = static_cast<int>(f.size()) - 1;
  while (deg >= 0 && f[static_cast<std::size_t>(deg)] == Complex{}) --deg;
  if (deg < 3) throw ContractError("hyperelliptic curve needs deg f >= 3");
  return (deg - 1) / 2;
}

std::vector<Jet> hyperelliptic_jets(const std::vector<Complex>& f, Complex x0, Complex y0, int depth) {
  const int g = hyperelliptic_genus(f);
  const auto cs = curve_series(f, x0, y0, depth);
  std::vector<Jet> out;
  for (int k = 0; k < g; ++k) out.push_back({x0, series_mul(shifted_power(k, x0, depth), cs.inv_y, depth)});
  return out;
}

std::vector<Jet> hyperelliptic_quadratic_jets(const std::vector<Complex>& f, Complex x0, Complex y0, int depth) {
  const int g = hyperelliptic_genus(f);
  const auto cs = curve_series(f, x0, y0, depth);
  std::vector<Jet> out;
  for (int j = 0; j <= 2 * g - 2; ++j) out.push_back({x0, series_mul(shifted_power(j, x0, depth), cs.inv_f, depth)});
  for (int j = 0; j <= g - 3; ++j) out.push_back({x0, series_mul(shifted_power(j, x0, depth), cs.inv_y, depth)});
  return out;
}

Eigen::VectorXcd bperiod_variation(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& pi,
                                   const Eigen::MatrixXcd& gammadot_oo) {
  const Eigen::Index g = pi.rows();
  if (pi.cols() != g || a.size() != g || gammadot_oo.rows() != g || gammadot_oo.cols() != g) {
    throw ContractError("bperiod_variation: shape mismatch");
  }
  const Eigen::MatrixXcd y = pi.imag().cast<Complex>();
  return (Complex(0.0, -2.0) * (a.transpose() * y * gammadot_oo * y)).transpose();
}

Complex siegel_pairing(const Eigen::VectorXcd& alpha_p, const Eigen::VectorXcd& alpha_q,
                       const Eigen::MatrixXd& im_pi) {
  if (im_pi.rows() != im_pi.cols() || alpha_p.size() != im_pi.rows() || alpha_q.size() != im_pi.rows()) {
    throw ContractError("siegel_pairing: shape mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(im_pi);
  if (llt.info() != Eigen::Success) throw DomainError("siegel_pairing: Im Pi is not positive definite");
  const Eigen::VectorXcd y_inv_conj_q = llt.solve(Eigen::MatrixXd::Identity(im_pi.rows(), im_pi.cols())).cast<Complex>() *
                                        alpha_q.conjugate();
  const Complex inner = (alpha_p.transpose() * y_inv_conj_q)(0, 0);
  return 4.0 * kPi * kPi * inner * inner;
}

}  // namespace schiffer
