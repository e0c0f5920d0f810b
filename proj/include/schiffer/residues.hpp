#pragma once

#include <functional>
#include <vector>

#include "schiffer/errors.hpp"
#include "schiffer/jet.hpp"
#include "schiffer/series.hpp"

namespace schiffer {

/// A function holomorphic on an annulus containing the contour of interest.
using AnalyticFn = std::function<Complex(Complex)>;

inline constexpr int kDefaultSamples = 256;
inline constexpr int kMaxAdaptiveSamples = 4096;

/// Positively oriented circle sampled at `samples` equispaced nodes.
class Contour {
 public:
  /// Throws ContractError unless radius > 0 and samples is a power of two >= 16.
  Contour(Complex center, double radius, int samples = kDefaultSamples);

  Complex center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  int samples() const noexcept { return samples_; }

  Contour with_samples(int samples) const { return Contour(center_, radius_, samples); }
  Contour with_radius(double radius) const { return Contour(center_, radius, samples_); }
  /// Node k, center + radius e^{2 pi i k / M}.
  Complex node(int k) const;
  std::vector<Complex> nodes() const;
  /// True when the closed disc of this contour lies strictly inside `outer`.
  bool strictly_inside(const Contour& outer) const;

 private:
  Complex center_;
  double radius_;
  int samples_;
};

/// Trapezoid rule for the closed integral of f dz over the circle.
/// Throws DomainError naming the node when a sample is not finite.
Complex contour_integrate(const AnalyticFn& f, const Contour& contour);

/// Doubles the sample count from contour.samples() up to `max_samples`
/// until two successive results agree to `tol` (relative to max(1, |I|)).
Complex contour_integrate_adaptive(const AnalyticFn& f, const Contour& contour, double tol = 1e-12,
                                   int max_samples = kMaxAdaptiveSamples);

/// Taylor coefficients c_0..c_d of f at p from Cauchy integrals over the
/// circle of radius rho about p.
Jet cauchy_jet(const AnalyticFn& f, Complex p, double rho, int depth, int samples = kDefaultSamples);

/// k-th derivative of f at z from a Cauchy integral on a circle of radius h.
Complex cauchy_derivative(const AnalyticFn& f, Complex z, int k, double h, int samples = 32);

/// Serre duality pairing: closed integral of r(z) phi(z) dz over the contour.
/// For a Laurent polynomial phi this is 2 pi i res(r phi) when the contour
/// encloses the origin and 0 otherwise.
Complex serre_pairing(const LaurentPoly& r, const LaurentPoly& phi, const Contour& contour);
Complex serre_pairing(const LaurentPoly& r, const AnalyticFn& phi, const Contour& contour);

}  // namespace schiffer
