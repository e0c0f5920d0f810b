#include "schiffer/deformations.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace schiffer {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

struct Composition {
  SlitMapSpec outer;
  SlitMapSpec inner;
  Complex rotation{1.0, 0.0};
  bool outer_only = false;
};

void check_case(const DeformationCase& c) {
  std::visit(Overloaded{
                 [](const deform::SS&) {},
                 [](const deform::NN& s) { validate(slit::N{s.n}); },
                 [](const deform::SP&) {},
                 [](const deform::SQ& s) { validate(slit::Q{s.m, s.n}); },
                 [](const deform::SK& s) { validate(slit::K{s.theta}); },
             },
             c);
}

Composition composition_of(const DeformationCase& c) {
  check_case(c);
  return std::visit(Overloaded{
                        [](const deform::SS&) { return Composition{slit::S{}, slit::S{}, 1.0, true}; },
                        [](const deform::NN& s) {
                          return Composition{slit::N{s.n}, slit::N{s.n}, std::polar(1.0, kPi / s.n), false};
                        },
                        [](const deform::SP&) { return Composition{slit::S{}, slit::P{}, 1.0, false}; },
                        [](const deform::SQ& s) { return Composition{slit::S{}, slit::Q{s.m, s.n}, 1.0, false}; },
                        [](const deform::SK& s) { return Composition{slit::S{}, slit::K{s.theta}, 1.0, false}; },
                    },
                    c);
}

LaurentPoly mono(Complex c, int k) { return LaurentPoly::monomial(c, k); }

// Coefficient h(w) of the flat-structure differential h(w) dw.
Complex flat_coefficient(const DeformationCase& c, Complex w) {
  return std::visit(Overloaded{
                        [&](const deform::NN& s) { return -std::pow(w, s.n - 1); },
                        [&](const deform::SQ& s) { return -std::pow(w, s.n - 1); },
                        [&](const deform::SP&) { return -w * w; },
                        [&](const deform::SK&) { return w; },
                        [&](const deform::SS&) -> Complex { throw ContractError("SS is not a splitting case"); },
                    },
                    c);
}

void add_sector_residuals(SplitReport& report, const SlitMapSpec& F, const SlitMapSpec& G, double eps, int m, int n,
                          int samples) {
  double sym = 0.0;
  for (int j = 0; j < samples; ++j) {
    const Complex z = std::polar(1.0 + 0.5 * j / samples, kPi * (j + 0.5) / samples);
    sym = std::max(sym, std::abs(slit_eval(G, std::conj(z)) - std::conj(slit_eval(G, z))));
  }
  report.boundary_residuals.emplace_back("conjugation symmetry", sym);
  const Complex tip = std::polar(1.0, std::acos(static_cast<double>(n - 2 * m) / n));
  report.boundary_residuals.emplace_back("slit tip preimage is critical", std::abs(slit_derivative(G, tip)));
  report.boundary_residuals.emplace_back("tip preimage maps to the middle point",
                                         std::abs(scaled_eval(F, eps, eps * tip) - report.image_points[1]) / eps);
  report.boundary_residuals.emplace_back("vertices map to the origin",
                                         std::max(std::abs(slit_eval(G, 1.0)), std::abs(slit_eval(G, -1.0))));
}

}  // namespace

std::string describe(const DeformationCase& c) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const deform::SS&) { os << "SS"; },
                 [&](const deform::NN& s) { os << "NN(n=" << s.n << ")"; },
                 [&](const deform::SP&) { os << "SP"; },
                 [&](const deform::SQ& s) { os << "SQ(m=" << s.m << ",n=" << s.n << ")"; },
                 [&](const deform::SK& s) { os << "SK(theta=" << s.theta << ")"; },
             },
             c);
  return os.str();
}

int natural_order(const DeformationCase& c) {
  check_case(c);
  return std::visit(Overloaded{
                        [](const deform::SS&) { return 2; },
                        [](const deform::NN& s) { return s.n; },
                        [](const deform::SP&) { return 1; },
                        [](const deform::SQ&) { return 1; },
                        [](const deform::SK&) { return 2; },
                    },
                    c);
}

EpsSeries deform_compose(const SlitMapSpec& outer, const SlitMapSpec& inner, Complex rotation, int order) {
  if (std::abs(std::abs(rotation) - 1.0) > 1e-12) throw ContractError("deform_compose requires |a| = 1");
  const EpsSeries g_inv = es_inverse(slit_series(inner, order));
  return es_compose(slit_series(outer, order), g_inv, rotation, order) * (1.0 / rotation);
}

EpsSeries case_series(const DeformationCase& c, int order) {
  const Composition comp = composition_of(c);
  if (order <= 0) order = std::max(kDefaultOrder, 2 * natural_order(c));
  if (comp.outer_only) return slit_series(comp.outer, order);
  return deform_compose(comp.outer, comp.inner, comp.rotation, order);
}

Cocycle cocycle_extract(const EpsSeries& family) {
  if (!family.identity_based()) throw ContractError("cocycle_extract requires an identity-based family");
  Cocycle out;
  for (int j = 1; j <= family.order(); ++j) {
    if (!family.term(j).is_zero()) {
      out.base_order = j;
      break;
    }
  }
  if (out.trivial()) return out;
  const int d = out.base_order;
  if (2 * d > family.order()) {
    throw ContractError("cocycle_extract: series order " + std::to_string(family.order()) +
                        " is below twice the base order " + std::to_string(d));
  }
  out.first = family.term(d);
  out.second = family.term(2 * d) * 2.0;
  return out;
}

Cocycle cocycle_oracle(const DeformationCase& c) {
  check_case(c);
  return std::visit(
      Overloaded{
          [](const deform::SS&) { return Cocycle{2, mono(1.0, -1), LaurentPoly{}}; },
          [](const deform::NN& s) {
            const double n = s.n;
            return Cocycle{s.n, mono(4.0 / n, 1 - s.n), mono(16.0 * (1.0 - n) / (n * n), 1 - 2 * s.n)};
          },
          [](const deform::SP&) { return Cocycle{1, mono(-2.0 / 3.0, 0), mono(32.0 / 9.0, -1)}; },
          [](const deform::SQ& s) {
            if (s.m == 1 && s.n == 3) return Cocycle{1, mono(-2.0 / 3.0, 0), mono(32.0 / 9.0, -1)};
            throw NotAvailableError("no closed-form cocycle for SQ(m=" + std::to_string(s.m) +
                                    ",n=" + std::to_string(s.n) + ")");
          },
          [](const deform::SK& s) {
            const double c2 = std::cos(2 * s.theta);
            const double c4 = std::cos(4 * s.theta);
            Cocycle k{2, mono(1.0 + c2, -1), mono((-1.0 - 4.0 * c2 + c4 - 4.0 * c2 * c2) / 2.0, -3)};
            // At theta = pi/2 the skean is S itself and the family is the identity.
            if (k.first.is_zero() && k.second.is_zero()) k.base_order = 0;
            return k;
          },
      },
      c);
}

Complex deformation_eval(const DeformationCase& c, double eps, Complex w) {
  const Composition comp = composition_of(c);
  if (comp.outer_only) return scaled_eval(comp.outer, eps, w);
  const Complex u = scaled_invert(comp.inner, eps, w);
  return scaled_eval(comp.outer, eps, comp.rotation * u) / comp.rotation;
}

CocycleEstimate cocycle_numeric(const DeformationCase& c, Complex z, const std::vector<double>& taus) {
  if (taus.size() < 3) throw ContractError("cocycle_numeric needs at least three tau values");
  for (double t : taus) {
    if (!(t > 0.0 && t <= 1e-2)) throw ContractError("cocycle_numeric requires tau in (0, 1e-2]");
  }
  if (std::abs(z) < 1.0) throw ContractError("cocycle_numeric requires |z| >= 1");

  std::vector<double> ts = taus;
  std::sort(ts.begin(), ts.end(), std::greater<>());
  const int d = natural_order(c);
  std::vector<Complex> ys;
  for (double t : ts) {
    try {
      ys.push_back(deformation_eval(c, std::pow(t, 1.0 / d), z) - z);
    } catch (const ConvergenceError& e) {
      std::ostringstream os;
      os << "cocycle_numeric: inversion failed at tau = " << t << ": " << e.what();
      throw ConvergenceError(os.str(), e.last_iterate());
    }
  }

  // Interpolate y(tau) = sum_{k=1}^{K} c_k tau^k in the scaled variable tau / tau_max.
  const double scale = ts.front();
  auto fit = [&](std::size_t first) {
    const auto k = static_cast<Eigen::Index>(ts.size() - first);
    Eigen::MatrixXcd v(k, k);
    Eigen::VectorXcd rhs(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const double s = ts[first + static_cast<std::size_t>(i)] / scale;
      for (Eigen::Index j = 0; j < k; ++j) v(i, j) = std::pow(s, static_cast<double>(j + 1));
      rhs(i) = ys[first + static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXcd sol = v.fullPivLu().solve(rhs);
    return std::pair<Complex, Complex>{sol(0) / scale, k > 1 ? 2.0 * sol(1) / (scale * scale) : Complex{}};
  };
  const auto [r1, r2] = fit(0);
  const auto [q1, q2] = fit(1);
  CocycleEstimate out;
  out.base_order = d;
  out.first = r1;
  out.second = r2;
  out.first_error = std::abs(r1 - q1);
  out.second_error = std::abs(r2 - q2);
  return out;
}

double SplitReport::max_boundary_residual() const {
  double worst = 0.0;
  for (const auto& [name, value] : boundary_residuals) worst = std::max(worst, value);
  return worst;
}

int winding_number(const std::function<Complex(Complex)>& f, Complex center, double radius, int samples) {
  if (samples < 8) throw ContractError("winding_number needs at least 8 samples");
  std::vector<Complex> values(static_cast<std::size_t>(samples));
  double peak = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Complex z = center + std::polar(radius, kTwoPi * (k + 0.5) / samples);
    values[static_cast<std::size_t>(k)] = f(z);
    peak = std::max(peak, std::abs(values[static_cast<std::size_t>(k)]));
  }
  std::ostringstream where;
  where << " on the circle |z - " << center << "| = " << radius << "; try a smaller probe radius";
  double total = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Complex a = values[static_cast<std::size_t>(k)];
    const Complex b = values[static_cast<std::size_t>((k + 1) % samples)];
    if (!(std::abs(a) > 1e-12 * peak) || !std::isfinite(std::abs(a))) {
      throw InconclusiveError("winding number: function nearly vanishes" + where.str());
    }
    const double step = std::arg(b / a);
    if (std::abs(step) > kPi / 4) throw InconclusiveError("winding number: argument jumps" + where.str());
    total += step;
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) throw InconclusiveError("winding number: non-integral total" + where.str());
  return static_cast<int>(rounded);
}

SplitReport splitting_verify(const DeformationCase& c, double eps, const SplitOptions& options) {
  if (!(eps > 0.0 && eps <= 0.1)) throw ContractError("splitting_verify requires eps in (0, 0.1]");
  const Composition comp = composition_of(c);
  if (comp.outer_only) throw ContractError("splitting_verify: SS does not split a zero");
  const Complex a = comp.rotation;
  const SlitMapSpec& F = comp.outer;
  const SlitMapSpec& G = comp.inner;

  // Pushforward coefficient eta(zeta), computed from the preimage v with zeta = a^-1 F_eps(v).
  auto eta_from_v = [&](Complex v) {
    const Complex u = v / a;
    const Complex w = scaled_eval(G, eps, u);
    return flat_coefficient(c, w) * slit_derivative(G, u / eps) / slit_derivative(F, v / eps);
  };
  auto eta = [&](Complex zeta) { return eta_from_v(scaled_invert(F, eps, a * zeta)); };

  SplitReport report;
  std::visit(Overloaded{
                 [&](const deform::NN& s) {
                   report.image_points = {0.0};
                   report.predicted_orders = {s.n - 1};
                 },
                 [&](const deform::SP&) {
                   report.image_points = {-2.0 * eps, 2.0 * eps / 3.0, 2.0 * eps};
                   report.predicted_orders = {1, 1, 0};
                 },
                 [&](const deform::SQ& s) {
                   report.image_points = {-2.0 * eps, 2.0 * eps * (s.n - 2 * s.m) / s.n, 2.0 * eps};
                   report.predicted_orders = {s.n - s.m - 1, 1, s.m - 1};
                 },
                 [&](const deform::SK&) {
                   report.image_points = {0.0};
                   report.predicted_orders = {1};
                 },
                 [&](const deform::SS&) {},
             },
             c);

  const double probe = options.probe_factor * eps;
  for (Complex centre : report.image_points) {
    report.measured_orders.push_back(winding_number(eta, centre, probe, options.samples));
  }

  // Continuity of eta across the slits: compare the two preimages of each slit point.
  const int m = options.edge_samples;
  double jump = 0.0;
  double peak = 0.0;
  auto compare = [&](Complex v, Complex partner) {
    const Complex e1 = eta_from_v(v);
    const Complex e2 = eta_from_v(partner);
    jump = std::max(jump, std::abs(e1 - e2));
    peak = std::max({peak, std::abs(e1), std::abs(e2)});
  };
  constexpr double kEdgeMargin = 0.02;
  if (const auto* nn = std::get_if<deform::NN>(&c)) {
    const double half = kPi / nn->n;
    for (int k = 0; k < nn->n; ++k) {
      const double base = 2.0 * half * k;
      for (int j = 0; j < m; ++j) {
        const double phi = kEdgeMargin + (half - 2 * kEdgeMargin) * (j + 0.5) / m;
        compare(std::polar(eps, base + phi), std::polar(eps, base + 2.0 * half - phi));
      }
    }
  } else {
    for (int j = 0; j < m; ++j) {
      const double phi = kEdgeMargin + (kPi - 2 * kEdgeMargin) * (j + 0.5) / m;
      compare(std::polar(eps, phi), std::polar(eps, -phi));
    }
  }
  report.boundary_residuals.emplace_back("edge continuity", peak > 0.0 ? jump / peak : jump);

  auto finite_abs = [](Complex v) { return std::isfinite(std::abs(v)) ? std::abs(v) : 0.0; };
  std::visit(
      Overloaded{
          [&](const deform::NN& s) {
            double roots = 0.0, tips = 0.0;
            for (int k = 0; k < s.n; ++k) {
              roots = std::max(roots, std::abs(slit_eval(G, std::polar(1.0, kTwoPi * k / s.n))));
              tips = std::max(tips, finite_abs(slit_derivative(G, std::polar(1.0, kPi * (2 * k + 1) / s.n))));
            }
            report.boundary_residuals.emplace_back("roots of unity map to the origin", roots);
            report.boundary_residuals.emplace_back("star tips are critical", tips);
          },
          [&](const deform::SP&) { add_sector_residuals(report, F, G, eps, 1, 3, m); },
          [&](const deform::SQ& s) { add_sector_residuals(report, F, G, eps, s.m, s.n, m); },
          [&](const deform::SK&) {
            const Complex i{0.0, 1.0};
            double crit = 0.0;
            for (Complex z : {Complex{1.0}, Complex{-1.0}, i, -i}) crit = std::max(crit, finite_abs(slit_derivative(G, z)));
            report.boundary_residuals.emplace_back("skean tips are critical", crit);
            report.boundary_residuals.emplace_back(
                "horizontal tips are real", std::max(std::abs(slit_eval(G, 1.0).imag()), std::abs(slit_eval(G, -1.0).imag())));
            report.boundary_residuals.emplace_back(
                "vertical tips are imaginary", std::max(std::abs(slit_eval(G, i).real()), std::abs(slit_eval(G, -i).real())));
            report.boundary_residuals.emplace_back(
                "horizontal tips map to slit tips",
                std::max(std::abs(slit_eval(F, 1.0) - 2.0), std::abs(slit_eval(F, -1.0) + 2.0)));
            report.boundary_residuals.emplace_back("vertical tips map to the origin",
                                                   std::max(std::abs(slit_eval(F, i)), std::abs(slit_eval(F, -i))));
          },
          [&](const deform::SS&) {},
      },
      c);
  return report;
}

}  // namespace schiffer
