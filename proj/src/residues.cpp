#include "schiffer/residues.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace schiffer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI{0.0, 1.0};

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

Complex checked(const AnalyticFn& f, Complex z) {
  const Complex v = f(z);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os << "non-finite integrand value at z = " << z;
    throw DomainError(os.str());
  }
  return v;
}

// sum over nodes k = offset, offset + stride, ... of f(z_k) (z_k - c), where
// z_k = c + rho exp(2 pi i k / m).
Complex weighted_sum(const AnalyticFn& f, Complex center, double radius, int m, int offset, int stride) {
  Complex sum{};
  for (int k = offset; k < m; k += stride) {
    const Complex u = std::polar(radius, kTwoPi * k / m);
    sum += checked(f, center + u) * u;
  }
  return sum;
}

}  // namespace

Contour::Contour(Complex center, double radius, int samples) : center_(center), radius_(radius), samples_(samples) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ContractError("contour radius must be positive");
  if (samples < 16 || !is_power_of_two(samples)) {
    throw ContractError("contour sample count must be a power of two >= 16");
  }
}

Complex Contour::node(int k) const { return center_ + std::polar(radius_, kTwoPi * k / samples_); }

std::vector<Complex> Contour::nodes() const {
  std::vector<Complex> out(static_cast<std::size_t>(samples_));
  for (int k = 0; k < samples_; ++k) out[static_cast<std::size_t>(k)] = node(k);
  return out;
}

bool Contour::strictly_inside(const Contour& outer) const {
  return std::abs(center_ - outer.center_) + radius_ < outer.radius_;
}

Complex contour_integrate(const AnalyticFn& f, const Contour& contour) {
  const int m = contour.samples();
  return kI * kTwoPi / static_cast<double>(m) * weighted_sum(f, contour.center(), contour.radius(), m, 0, 1);
}

Complex contour_integrate_adaptive(const AnalyticFn& f, const Contour& contour, double tol, int max_samples) {
  int m = contour.samples();
  Complex sum = weighted_sum(f, contour.center(), contour.radius(), m, 0, 1);
  Complex previous = kI * kTwoPi / static_cast<double>(m) * sum;
  while (2 * m <= max_samples) {
    // Nodes of the 2m rule are the m old nodes plus the odd-indexed new ones.
    sum += weighted_sum(f, contour.center(), contour.radius(), 2 * m, 1, 2);
    m *= 2;
    const Complex current = kI * kTwoPi / static_cast<double>(m) * sum;
    if (std::abs(current - previous) <= tol * std::max(1.0, std::abs(current))) return current;
    previous = current;
  }
  return previous;
}

Jet cauchy_jet(const AnalyticFn& f, Complex p, double rho, int depth, int samples) {
  if (depth < 0) throw ContractError("cauchy_jet depth must be non-negative");
  const Contour circle(p, rho, samples);
  Jet jet{p, std::vector<Complex>(static_cast<std::size_t>(depth) + 1)};
  for (int j = 0; j < samples; ++j) {
    const double theta = kTwoPi * j / samples;
    const Complex value = checked(f, circle.node(j));
    for (int k = 0; k <= depth; ++k) {
      jet.coeffs[static_cast<std::size_t>(k)] += value * std::polar(std::pow(rho, -k), -k * theta);
    }
  }
  for (auto& c : jet.coeffs) c /= static_cast<double>(samples);
  return jet;
}

Complex cauchy_derivative(const AnalyticFn& f, Complex z, int k, double h, int samples) {
  return cauchy_jet(f, z, h, k, samples).derivative_at_base(k);
}

Complex serre_pairing(const LaurentPoly& r, const LaurentPoly& phi, const Contour& contour) {
  const double origin_distance = std::abs(contour.center());
  if (origin_distance == contour.radius()) {
    throw ContractError("serre_pairing: contour passes through the pole at the origin");
  }
  if (origin_distance > contour.radius()) return 0.0;
  return kI * kTwoPi * (r * phi).residue();
}

Complex serre_pairing(const LaurentPoly& r, const AnalyticFn& phi, const Contour& contour) {
  return contour_integrate([&](Complex z) { return r(z) * phi(z); }, contour);
}

}  // namespace schiffer
