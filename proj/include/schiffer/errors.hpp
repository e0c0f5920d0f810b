#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace schiffer {

using Complex = std::complex<double>;

/// Argument outside the mathematical domain of an operation (|z| < 1 for a
/// slit map, a branch point for a hyperelliptic jet, a singular matrix).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller violated a documented precondition (identity-based family required,
/// contour nesting, jet depth).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative method did not converge. Carries the last iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Complex last_iterate)
      : std::runtime_error(what), last_(last_iterate) {}
  Complex last_iterate() const noexcept { return last_; }

 private:
  Complex last_;
};

/// A closed form is not known for the requested case.
class NotAvailableError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical measurement could not be made reliably (e.g. a winding number
/// around a circle passing too close to a zero).
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schiffer
