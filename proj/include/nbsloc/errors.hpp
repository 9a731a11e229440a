#pragma once

#include <stdexcept>
#include <string>

namespace nbsloc {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A series or iteration exhausted its budget before meeting the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, long terms_used)
      : std::runtime_error(what + " (terms used: " + std::to_string(terms_used) + ")"),
        terms_used_(terms_used) {}
  long terms_used() const noexcept { return terms_used_; }

 private:
  long terms_used_;
};

// A series that is known not to converge for the given parameters.
class DivergenceError : public DomainError {
 public:
  explicit DivergenceError(const std::string& what) : DomainError(what) {}
};

// The requested route exists only for a subset of parameters.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature refinement disagreed by more than the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double discrepancy)
      : std::runtime_error(what), discrepancy_(discrepancy) {}
  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

namespace detail {
inline void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}
}  // namespace detail

}  // namespace nbsloc
