#pragma once

// Shared machinery of the theorem and corollary evaluators.

#include <algorithm>
#include <cmath>
#include <string>

#include "ineq/bounds.hpp"
#include "ineq/errors.hpp"

namespace ineq::bounds::detail {

/// A value with an absolute error bound, propagated to first order plus the
/// product cross term.
struct Measured {
  double value = 0.0;
  double err = 0.0;
};

inline Measured exact(double v) { return {v, 0.0}; }
inline Measured operator+(Measured x, Measured y) { return {x.value + y.value, x.err + y.err}; }
inline Measured operator-(Measured x, Measured y) { return {x.value - y.value, x.err + y.err}; }
inline Measured operator*(double c, Measured x) { return {c * x.value, std::abs(c) * x.err}; }
inline Measured operator*(Measured x, Measured y) {
  return {x.value * y.value, std::abs(x.value) * y.err + std::abs(y.value) * x.err + x.err * y.err};
}

/// x^(1/p) for x >= 0 with the error taken from the monotone image of
/// [x - err, x + err].
inline Measured root(Measured x, double p) {
  const double r = 1.0 / p;
  const double v = std::pow(std::max(x.value, 0.0), r);
  const double hi = std::pow(std::max(x.value, 0.0) + x.err, r);
  const double lo = std::pow(std::max(x.value - x.err, 0.0), r);
  return {v, std::max(hi - v, v - lo)};
}

/// Running state of one evaluation: quadrature cost and failures.
class Evaluation {
 public:
  explicit Evaluation(const EvalOptions& opts) : opts_(opts) {}

  Measured integral(const quad::Integrand& f, const Interval& interval);

  void mark_inconclusive(const std::string& why) {
    inconclusive_ = true;
    append(why);
  }

  void append(const std::string& note) {
    if (!diagnostic_.empty()) diagnostic_ += "; ";
    diagnostic_ += note;
  }

  const EvalOptions& options() const { return opts_; }
  BoundReport finish(Measured lhs, Measured rhs) const;

 private:
  const EvalOptions& opts_;
  long evaluations_ = 0;
  bool inconclusive_ = false;
  std::string diagnostic_;
};

/// f(x) with a domain failure reported as an unmet hypothesis.
double at(const FunctionSpec& f, double x, const char* name);

/// Requires the function domain to reach `upper`.
void require_domain(const FunctionSpec& f, double upper, const char* name);

void require_tag(const CertifiedFunction& f, const funclib::ClassTag& tag, const char* name);

void require_unit(double v, const char* name);

/// Confirms lo <= f/g <= hi (within 1e-9 relative) on the check grid.
void require_ratio(const FunctionSpec& f, const FunctionSpec& g, const Interval& interval, const RatioBounds& ratio,
                   int grid);

/// Requires f > 0 on the check grid including both endpoints.
void require_positive(const FunctionSpec& f, const Interval& interval, int grid, const char* name);

/// Requires f to be nondecreasing on the check grid.
void require_nondecreasing(const FunctionSpec& f, const Interval& interval, int grid, const char* name);

}  // namespace ineq::bounds::detail

namespace ineq::bounds::detail {

/// Integrals and endpoint values shared by thm4 and its corollaries.
struct WeightedProductParts {
  Measured up_f;    // int (x-a) f
  Measured down_f;  // int (b-x) f
  Measured up_g;    // int (x-a) g
  Measured down_g;  // int (b-x) g
  Measured fg;      // int f g
  double fb, ga_m, gb, fa_m;  // f(b), g(a/m2), g(b), f(a/m1)
};

WeightedProductParts weighted_product_parts(const CertifiedFunction& f, const CertifiedFunction& g, double m1,
                                            double m2, const Interval& interval, Evaluation& eval);

/// Right-hand side of the m-convex weighted-product bound.
Measured weighted_product_rhs(const WeightedProductParts& parts, double m1, double m2, const Interval& interval);

/// Multiplies both sides (and tolerance) by c > 0.
BoundReport rescale(BoundReport report, double c);

}  // namespace ineq::bounds::detail
