#pragma once

#include <vector>

#include "schiffer/errors.hpp"

namespace schiffer {

/// Taylor data c_0..c_d of a holomorphic function at a base point, in the
/// local coordinate (z - base).
struct Jet {
  Complex base{};
  std::vector<Complex> coeffs;

  int depth() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  Complex coeff(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(k)] : Complex{};
  }
  /// k-th derivative at the base point, k! c_k.
  Complex derivative_at_base(int k) const;
  /// Value of the Taylor polynomial at z.
  Complex operator()(Complex z) const;
  /// Derivative of the Taylor polynomial at z.
  Complex derivative(Complex z) const;
  /// Product truncated at the smaller depth.
  friend Jet operator*(const Jet& a, const Jet& b);
};

}  // namespace schiffer
