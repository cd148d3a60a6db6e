#ifndef ERGM_ERRORS_HPP
#define ERGM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ergm {

/// Requested size exceeds what exact enumeration is configured to handle.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, int bound)
      : std::runtime_error(what), bound_(bound) {}
  int bound() const noexcept { return bound_; }

 private:
  int bound_;
};

/// An iterative method failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Input outside the domain where a quantity is defined.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Internal consistency check failed (cached counts drifted from a recount).
class AuditError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ergm

#endif  // ERGM_ERRORS_HPP
