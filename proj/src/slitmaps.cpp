#include "schiffer/slitmaps.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace schiffer {

namespace {

constexpr double kPi = std::numbers::pi;
// Points with |z| >= 1 - kBoundarySlack count as on or outside the unit circle.
constexpr double kBoundarySlack = 1e-12;
// A factor 1 - c/z^p of smaller magnitude is treated as an exact zero.
constexpr double kFactorZero = 1e-13;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

Complex factor_power(Complex base, const Rational& exponent) {
  if (exponent.is_integer()) return std::pow(base, static_cast<int>(exponent.num()));
  return std::exp(exponent.to_double() * std::log(base));
}

struct NewtonResult {
  bool ok = false;
  Complex z;
};

NewtonResult newton(const SlitMapSpec& spec, Complex w, Complex seed, const InvertOptions& opt) {
  const double scale = std::max(1.0, std::abs(w));
  NewtonResult res{false, seed};
  if (std::abs(seed) <= 1.0) return res;
  Complex z = seed;
  Complex r = slit_eval(spec, z) - w;
  for (int it = 0; it < opt.max_iter; ++it) {
    if (std::abs(r) <= opt.tol * scale) {
      // Polish while the residual keeps shrinking.
      for (int extra = 0; extra < 3 && r != Complex{}; ++extra) {
        const Complex zn = z - r / slit_derivative(spec, z);
        if (!(std::abs(zn) > 1.0)) break;
        const Complex rn = slit_eval(spec, zn) - w;
        if (!(std::abs(rn) < std::abs(r))) break;
        z = zn;
        r = rn;
      }
      res.ok = true;
      res.z = z;
      return res;
    }
    const Complex d = slit_derivative(spec, z);
    if (d == Complex{} || !std::isfinite(std::abs(d))) break;
    const Complex step = r / d;
    double lambda = 1.0;
    bool accepted = false;
    Complex zn, rn;
    for (int h = 0; h <= opt.max_halvings; ++h, lambda *= 0.5) {
      zn = z - lambda * step;
      if (std::abs(zn) <= 1.0) continue;
      rn = slit_eval(spec, zn) - w;
      if (std::abs(rn) < std::abs(r)) {
        accepted = true;
        break;
      }
    }
    res.z = z;
    if (!accepted) return res;
    z = zn;
    r = rn;
  }
  res.z = z;
  return res;
}

}  // namespace

void validate(const SlitMapSpec& spec) {
  std::visit(Overloaded{
                 [](const slit::S&) {},
                 [](const slit::N& s) {
                   if (s.n < 2) throw ContractError("N map requires n >= 2");
                 },
                 [](const slit::P&) {},
                 [](const slit::K& s) {
                   if (!(s.theta >= 0.0 && s.theta <= kPi / 2)) {
                     throw ContractError("K map requires theta in [0, pi/2]");
                   }
                 },
                 [](const slit::Q& s) {
                   if (!(0 < s.m && s.m < s.n)) throw ContractError("Q map requires 0 < m < n");
                 },
                 [](const slit::Radial& s) {
                   if (s.angles.empty() || s.angles.size() != s.exponents.size()) {
                     throw ContractError("radial map needs matching non-empty angle and exponent lists");
                   }
                   Rational total(0);
                   for (std::size_t i = 0; i < s.angles.size(); ++i) {
                     if (!(s.angles[i] > -kPi && s.angles[i] <= kPi)) {
                       throw ContractError("radial angles must lie in (-pi, pi]");
                     }
                     if (i > 0 && !(s.angles[i] > s.angles[i - 1])) {
                       throw ContractError("radial angles must be strictly increasing");
                     }
                     if (!(Rational(0) < s.exponents[i])) {
                       throw ContractError("radial exponents must be positive");
                     }
                     total = total + s.exponents[i];
                   }
                   if (!(total == Rational(2))) {
                     throw ContractError("radial exponents must sum to 2, got " + total.str());
                   }
                 },
             },
             spec);
}

std::string describe(const SlitMapSpec& spec) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const slit::S&) { os << "S"; },
                 [&](const slit::N& s) { os << "N(n=" << s.n << ")"; },
                 [&](const slit::P&) { os << "P"; },
                 [&](const slit::K& s) { os << "K(theta=" << s.theta << ")"; },
                 [&](const slit::Q& s) { os << "Q(m=" << s.m << ",n=" << s.n << ")"; },
                 [&](const slit::Radial& s) {
                   os << "Radial(";
                   for (std::size_t i = 0; i < s.angles.size(); ++i) {
                     os << (i ? "," : "") << s.angles[i] << ":" << s.exponents[i].str();
                   }
                   os << ")";
                 },
             },
             spec);
  return os.str();
}

std::vector<SlitFactor> factors(const SlitMapSpec& spec) {
  validate(spec);
  return std::visit(
      Overloaded{
          [](const slit::S&) { return std::vector<SlitFactor>{{-1.0, 2, Rational(1)}}; },
          [](const slit::N& s) { return std::vector<SlitFactor>{{1.0, s.n, Rational(2, s.n)}}; },
          [](const slit::P&) {
            return std::vector<SlitFactor>{{-1.0, 1, Rational(4, 3)}, {1.0, 1, Rational(2, 3)}};
          },
          [](const slit::K& s) {
            return std::vector<SlitFactor>{{std::polar(1.0, 2 * s.theta), 2, Rational(1, 2)},
                                           {std::polar(1.0, -2 * s.theta), 2, Rational(1, 2)}};
          },
          [](const slit::Q& s) {
            return std::vector<SlitFactor>{{-1.0, 1, Rational(2 * (s.n - s.m), s.n)},
                                           {1.0, 1, Rational(2 * s.m, s.n)}};
          },
          [](const slit::Radial& s) {
            std::vector<SlitFactor> out;
            for (std::size_t i = 0; i < s.angles.size(); ++i) {
              out.push_back({std::polar(1.0, -s.angles[i]), 1, s.exponents[i]});
            }
            return out;
          },
      },
      spec);
}

Complex slit_eval(const SlitMapSpec& spec, Complex z) {
  if (std::abs(z) < 1.0 - kBoundarySlack) {
    throw DomainError("slit map evaluated inside the unit disc");
  }
  Complex value = z;
  for (const auto& f : factors(spec)) {
    const Complex base = 1.0 - f.c / std::pow(z, f.power);
    if (std::abs(base) <= kFactorZero) return 0.0;
    value *= factor_power(base, f.exponent);
  }
  return value;
}

Complex slit_derivative(const SlitMapSpec& spec, Complex z) {
  if (std::abs(z) < 1.0 - kBoundarySlack) {
    throw DomainError("slit map derivative evaluated inside the unit disc");
  }
  // f'/f = 1/z + sum alpha p c z^{-p-1} / (1 - c z^{-p})
  Complex value = z;
  Complex log_deriv = 1.0 / z;
  for (const auto& f : factors(spec)) {
    const Complex zp = std::pow(z, f.power);
    const Complex base = 1.0 - f.c / zp;
    value *= factor_power(base, f.exponent);
    log_deriv += f.exponent.to_double() * f.power * f.c / (zp * z * base);
  }
  return value * log_deriv;
}

EpsSeries slit_series(const SlitMapSpec& spec, int order) {
  EpsSeries acc = EpsSeries::constant(LaurentPoly::constant(1.0), order);
  for (const auto& f : factors(spec)) {
    acc = es_mul(acc, es_binomial(-f.c, f.power, -f.power, f.exponent, order), order);
  }
  EpsSeries out(order);
  for (int j = 0; j <= order; ++j) out.term(j) = acc.term(j).shift(1);
  return out;
}

Complex slit_invert(const SlitMapSpec& spec, Complex w, const InvertOptions& options) {
  validate(spec);
  const double radius = std::abs(w);
  if (radius == 0.0) throw ConvergenceError("slit_invert: w = 0 lies on the slits", w);

  auto direct = newton(spec, w, w, options);
  if (direct.ok) return direct.z;

  // Continuation along the ray from far away, where the seed z = w is good.
  constexpr double kFar = 8.0;
  constexpr double kStepRatio = 0.9;
  const double far = std::max(kFar, 2.0 * radius);
  const int steps = static_cast<int>(std::ceil(std::log(far / radius) / std::log(1.0 / kStepRatio))) + 1;
  Complex z = w * (far / radius);
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    const Complex target = w * std::pow(far / radius, 1.0 - t);
    auto step = newton(spec, target, k == 0 ? target : z, options);
    if (!step.ok) {
      throw ConvergenceError("slit_invert: Newton iteration failed for " + describe(spec), step.z);
    }
    z = step.z;
  }
  return z;
}

Complex slit_invert(const SlitMapSpec& spec, Complex w, double tol, int max_iter) {
  InvertOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return slit_invert(spec, w, opt);
}

Complex scaled_eval(const SlitMapSpec& spec, double eps, Complex z) { return eps * slit_eval(spec, z / eps); }

Complex scaled_invert(const SlitMapSpec& spec, double eps, Complex w, const InvertOptions& options) {
  return eps * slit_invert(spec, w / eps, options);
}

}  // namespace schiffer
