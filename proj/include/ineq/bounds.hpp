#pragma once

#include <array>
#include <string>

#include "ineq/funclib.hpp"
#include "ineq/quad.hpp"

namespace ineq::bounds {

using funclib::CertifiedFunction;
using funclib::FunctionSpec;
using quad::Interval;

enum class Verdict { Holds, Violated, Inconclusive };

/// AsPrinted evaluates an inequality exactly as typeset; AsDerived uses the
/// constants produced by integrating the proof's pointwise bound.
enum class Variant { AsPrinted, AsDerived };

std::string to_string(Verdict v);
std::string to_string(Variant v);

/// LHS and RHS of one inequality instance.
///
/// slack = rhs - lhs. tol combines the propagated quadrature error
/// estimates with a relative rounding budget. The verdict is Holds iff
/// slack >= -tol, Violated (by -slack) otherwise, and Inconclusive when a
/// quadrature missed its tolerance or the right-hand side is undefined.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::Holds;
  double violation = 0.0;
  long evaluations = 0;
  std::string diagnostic;
};

struct HermiteHadamardReport {
  BoundReport left;
  BoundReport right;
};

/// Bounds m <= f/g <= M of the ratio of two positive functions.
struct RatioBounds {
  double lo;
  double hi;

  RatioBounds(double lo, double hi);
};

struct EvalOptions {
  quad::QuadOptions quad;
  double rel_budget = 1e-10;
  /// Grid used to confirm positivity, ratio bounds and monotonicity.
  int check_grid = 257;

  EvalOptions tightened(double factor) const {
    EvalOptions out = *this;
    out.quad = quad.tightened(factor);
    return out;
  }
};

/// c = [M(m+1) + (M+1)] / [(m+1)(M+1)] for the reverse Minkowski inequality.
double reverse_minkowski_constant(const RatioBounds& ratio);

/// Min and max of f/g over grid_density uniform points of the interval,
/// widened by a 1e-6 relative guard band. Throws HypothesisError when g
/// vanishes on the grid.
RatioBounds estimate_ratio_bounds(const FunctionSpec& f, const FunctionSpec& g, const Interval& interval,
                                  int grid_density = 257);

/// Both sides of the Hermite-Hadamard inequality for s-convex functions:
///   left:  2^(s-1) f((a+b)/2) <= mean of f
///   right: mean of f <= (f(a) + f(b)) / (s + 1)
HermiteHadamardReport hermite_hadamard_s(const CertifiedFunction& f, double s, const Interval& interval,
                                         const EvalOptions& opts = {});

/// (int (f+g)^p)^(1/p) <= (int f^p)^(1/p) + (int g^p)^(1/p).
BoundReport minkowski(const FunctionSpec& f, const FunctionSpec& g, double p, const Interval& interval,
                      const EvalOptions& opts = {});

/// (int f^p)^(1/p) + (int g^p)^(1/p) <= c (int (f+g)^p)^(1/p) under the ratio bounds.
BoundReport reverse_minkowski(const FunctionSpec& f, const FunctionSpec& g, double p, const Interval& interval,
                              const RatioBounds& ratio, const EvalOptions& opts = {});

/// Exponent-weighted product mean of an m1-convex f and m2-convex g.
BoundReport thm3_exponent_product(const CertifiedFunction& f, const CertifiedFunction& g, double m1, double m2,
                                  const Interval& interval, const EvalOptions& opts = {});

/// Linear-weight moments of m-convex f and g against their product integral.
BoundReport thm4_weighted_product(const CertifiedFunction& f, const CertifiedFunction& g, double m1, double m2,
                                  const Interval& interval, const EvalOptions& opts = {});

/// Scaled p-norm sum of m-convex f and g bounded by endpoint values.
/// AsPrinted uses (A^p - B^p)^(1/p), AsDerived (A^p + B^p)^(1/p), with
/// A = f(b) + g(b) and B = m1 f(a/m1) + m2 g(a/m2).
BoundReport thm5_minkowski_mconvex(const CertifiedFunction& f, const CertifiedFunction& g, double p, double m1,
                                   double m2, const Interval& interval, const RatioBounds& ratio, Variant variant,
                                   const EvalOptions& opts = {});

/// Right-hand side coefficients {f(b), f(a), g(b), g(a)} of the s-convex
/// exponent-product bound.
std::array<double, 4> thm6_coefficients(double s1, double s2, Variant variant);

BoundReport thm6_s_exponent_product(const CertifiedFunction& f, const CertifiedFunction& g, double s1, double s2,
                                    const Interval& interval, Variant variant = Variant::AsDerived,
                                    const EvalOptions& opts = {});

/// mean of f^alpha g^(1-alpha) <= [alpha (f(a)+f(b)) + (1-alpha)(g(a)+g(b))] / (s+1).
BoundReport thm7_s_cauchy_product(const CertifiedFunction& f, const CertifiedFunction& g, double s, double alpha,
                                  const Interval& interval, const EvalOptions& opts = {});

/// mean of f^alpha g^(1-alpha) <= alpha L(f(a), f(b)) + (1-alpha) L(g(a), g(b)).
BoundReport thm8_log_cauchy_product(const CertifiedFunction& f, const CertifiedFunction& g, double alpha,
                                    const Interval& interval, const EvalOptions& opts = {});

/// Coefficients {f(b), m1 f(a/m1), g(b), m2 g(a/m2)} of the (alpha, m)
/// exponent-product bound (the m factors are applied by the caller).
std::array<double, 4> thm9_coefficients(double alpha1, double alpha2, Variant variant);

BoundReport thm9_alpha_m_exponent_product(const CertifiedFunction& f, const CertifiedFunction& g, double alpha1,
                                          double m1, double alpha2, double m2, const Interval& interval,
                                          Variant variant, const EvalOptions& opts = {});

/// Coefficients of f(b)g(b), m2 f(b)g(a/m2), m1 f(a/m1)g(b) and
/// m1 m2 f(a/m1)g(a/m2) in the (alpha, m) weighted-product bound.
std::array<double, 4> thm10_coefficients(double alpha1, double alpha2, Variant variant);

BoundReport thm10_alpha_m_weighted_product(const CertifiedFunction& f, const CertifiedFunction& g, double alpha1,
                                           double m1, double alpha2, double m2, const Interval& interval,
                                           Variant variant, const EvalOptions& opts = {});

enum class Corollary { C1 = 1, C2, C3, C4, C5, C6, C7, C8, C9 };

/// Specializations of the theorem evaluators:
///   C1  thm3 with m1 = m2 = 1
///   C2  thm4 with m1 = m2 = 1, right side written with M(a,b), N(a,b)
///   C3  C2 for nondecreasing f, g (g(b), f(b) weights lowered to g(a), f(a))
///   C4  thm4 with m1 = m2 = 1 and g = 1
///   C5  thm5 with m1 = m2 = 1 at p = 1
///   C6  thm5 with m1 = m2 = 1 at general p
///   C7  thm6 with s1 = s2 = 1
///   C8  thm9 with alpha1 = alpha2 = 1
///   C9  thm10 with alpha1 = alpha2 = 1
/// `m1`, `m2` apply to C8/C9, `p` to C6; ratio bounds for C5/C6 are
/// estimated from f and g. Throws HypothesisError when a specialization
/// constraint does not hold.
struct CorollaryParams {
  double m1 = 1.0;
  double m2 = 1.0;
  double p = 1.0;
};

BoundReport corollary_preset(Corollary id, const CertifiedFunction& f, const CertifiedFunction& g,
                             const Interval& interval, Variant variant = Variant::AsDerived,
                             const CorollaryParams& params = {}, const EvalOptions& opts = {});

/// True when the corollary has distinct printed and derived forms.
bool has_printed_variant(Corollary id);

}  // namespace ineq::bounds
