#pragma once

#include <stdexcept>
#include <string>

namespace ineq {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A theorem hypothesis (class membership, positivity, ratio bounds,
/// extended domain) is not met by the inputs.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature did not reach the requested tolerance. Carries the
/// best estimate so callers can degrade to an inconclusive verdict.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_value, double err_est, long evaluations)
      : std::runtime_error(what), best_value_(best_value), err_est_(err_est), evaluations_(evaluations) {}

  double best_value() const noexcept { return best_value_; }
  double err_est() const noexcept { return err_est_; }
  long evaluations() const noexcept { return evaluations_; }

 private:
  double best_value_;
  double err_est_;
  long evaluations_;
};

}  // namespace ineq
