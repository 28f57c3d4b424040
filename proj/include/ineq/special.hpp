#pragma once

namespace ineq::special {

/// Euler Beta function B(x, y) = integral_0^1 t^(x-1) (1-t)^(y-1) dt,
/// evaluated through log-gamma. Throws DomainError unless x > 0 and y > 0.
double beta(double x, double y);

/// Logarithmic mean L(u, v) = (u - v) / (log u - log v), with L(u, u) = u.
/// Uses a series form near the diagonal. Throws DomainError unless u, v > 0.
double log_mean(double u, double v);

/// alpha*x + (1-alpha)*y - x^alpha * y^(1-alpha)  (weighted AM-GM gap, >= 0).
/// 0^0 is taken as 1.
double weighted_am_gm_gap(double alpha, double x, double y);

/// 2^(p-1) (e^p + f^p) - (e + f)^p, nonnegative for e, f >= 0 and p >= 1.
/// Throws DomainError for p < 1.
double power_split_check(double e, double f, double p);

/// (e*p + f*r) - (e*r + f*p) = (f - e)(r - p); nonnegative whenever
/// e <= f and p <= r.
double rearrangement_gap(double e, double f, double p, double r);

}  // namespace ineq::special
