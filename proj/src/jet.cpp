#include "schiffer/jet.hpp"

#include <algorithm>

namespace schiffer {

Complex Jet::derivative_at_base(int k) const {
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return factorial * coeff(k);
}

Complex Jet::operator()(Complex z) const {
  const Complex u = z - base;
  Complex sum{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) sum = sum * u + *it;
  return sum;
}

Complex Jet::derivative(Complex z) const {
  const Complex u = z - base;
  Complex sum{};
  for (int k = depth(); k >= 1; --k) sum = sum * u + static_cast<double>(k) * coeffs[static_cast<std::size_t>(k)];
  return sum;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.base != b.base) throw ContractError("jet product with different base points");
  const int depth = std::min(a.depth(), b.depth());
  Jet out{a.base, std::vector<Complex>(static_cast<std::size_t>(std::max(depth + 1, 0)))};
  for (int k = 0; k <= depth; ++k)
    for (int i = 0; i <= k; ++i) out.coeffs[static_cast<std::size_t>(k)] += a.coeff(i) * b.coeff(k - i);
  return out;
}

}  // namespace schiffer
