#include "ineq/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ineq/errors.hpp"

extern "C" double lgamma_r(double, int*);

namespace ineq::special {

namespace {

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

}  // namespace

double beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw DomainError("beta: arguments must be positive, got (" + std::to_string(x) + ", " +
                      std::to_string(y) + ")");
  }
  // Symmetric by construction: the sum is formed from the ordered pair.
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return std::exp(log_gamma(lo) + log_gamma(hi) - log_gamma(lo + hi));
}

double log_mean(double u, double v) {
  if (!(u > 0.0) || !(v > 0.0)) {
    throw DomainError("log_mean: arguments must be positive");
  }
  const double lo = std::min(u, v);
  const double hi = std::max(u, v);
  if (hi == lo) return lo;
  // hi - lo is exact when the arguments are within a factor of two, and
  // log1p keeps the denominator accurate near the diagonal.
  const double rel = (hi - lo) / lo;
  const double d = std::log1p(rel);
  if (d < 1e-8) {
    // L = lo * rel / log1p(rel) = lo * (1 + rel/2 - rel^2/12 + ...)
    return lo * (1.0 + rel * (0.5 - rel / 12.0));
  }
  return (hi - lo) / d;
}

double weighted_am_gm_gap(double alpha, double x, double y) {
  const double geometric = std::pow(x, alpha) * std::pow(y, 1.0 - alpha);
  return alpha * x + (1.0 - alpha) * y - geometric;
}

double power_split_check(double e, double f, double p) {
  if (!(p >= 1.0)) throw DomainError("power_split_check: p must be >= 1");
  return std::exp2(p - 1.0) * (std::pow(e, p) + std::pow(f, p)) - std::pow(e + f, p);
}

double rearrangement_gap(double e, double f, double p, double r) {
  return (e * p + f * r) - (e * r + f * p);
}

}  // namespace ineq::special
