#pragma once

#include <functional>

namespace ineq::quad {

/// Closed interval [a, b] with 0 <= a < b.
class Interval {
 public:
  Interval() = default;
  Interval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }

  bool operator==(const Interval&) const = default;

 private:
  double a_ = 0.0;
  double b_ = 1.0;
};

struct QuadratureResult {
  double value = 0.0;
  double err_est = 0.0;
  long evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 60;
  int max_panels = 5000;

  /// Same options with both tolerances divided by `factor`.
  QuadOptions tightened(double factor) const {
    QuadOptions out = *this;
    out.rel_tol /= factor;
    out.abs_tol /= factor;
    return out;
  }
};

using Integrand = std::function<double(double)>;

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
/// Never evaluates the integrand at the panel endpoints.
QuadratureResult gauss_kronrod_15(const Integrand& f, double lo, double hi);

/// Globally adaptive Gauss-Kronrod integration: repeatedly bisects the
/// panel with the largest error estimate until
/// err_est <= max(abs_tol, rel_tol * |value|). Deterministic for a fixed
/// integrand and options. Throws AccuracyError (with the best estimate)
/// when the panel budget or the depth limit is exhausted first.
QuadratureResult integrate(const Integrand& f, const Interval& interval, const QuadOptions& opts = {});

QuadratureResult integrate(const Integrand& f, const Interval& interval, double rel_tol, double abs_tol);

}  // namespace ineq::quad
