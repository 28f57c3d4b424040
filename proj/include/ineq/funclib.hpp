#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ineq::funclib {

enum class Family { Power, Affine, Exponential, Constant, NonNegSum, Scale };

std::string family_name(Family family);

/// Closed-form nonnegative function on [0, domain_upper].
///
///   Power(c, s)        c * x^s           c >= 0, s > 0
///   Affine(p, q)       p * x + q         p, q >= 0
///   Exponential(c, k)  c * exp(k * x)    c > 0
///   Constant(c)        c                 c >= 0
///   NonNegSum[...]     sum of terms
///   Scale(l, g)        l * g(x)          l >= 0
///
/// Immutable; copies share the expression tree.
class FunctionSpec {
 public:
  /// The zero function on [0, 1].
  FunctionSpec();

  static FunctionSpec power(double c, double s, double domain_upper);
  static FunctionSpec affine(double p, double q, double domain_upper);
  static FunctionSpec exponential(double c, double k, double domain_upper);
  static FunctionSpec constant(double c, double domain_upper);
  /// Domain of the sum is the smallest domain among the terms.
  static FunctionSpec sum(std::vector<FunctionSpec> terms);
  static FunctionSpec scale(double lambda, FunctionSpec inner);

  Family family() const;
  /// Coefficients in declaration order: (c, s), (p, q), (c, k), (c), (), (lambda).
  std::vector<double> coefficients() const;
  /// Children for NonNegSum (all terms) and Scale (one element).
  std::vector<FunctionSpec> children() const;
  double domain_upper() const noexcept { return domain_upper_; }

  /// f(x); throws DomainError outside [0, domain_upper].
  double operator()(double x) const;
  /// f(x) without the domain check (callers guarantee 0 <= x <= domain_upper).
  double eval_unchecked(double x) const;

  /// Same closed form on a new domain (recursively for sums and scales).
  FunctionSpec with_domain(double domain_upper) const;

  bool is_constant() const;

  /// Compact one-line form, e.g. "NonNegSum[Affine(1, 0), Constant(1)]".
  std::string to_string() const;

  bool operator==(const FunctionSpec& other) const;

 private:
  struct Node;
  FunctionSpec(std::shared_ptr<const Node> node, double domain_upper);

  std::shared_ptr<const Node> node_;
  double domain_upper_ = 1.0;
};

enum class ClassKind { Convex, Starshaped, MConvex, SConvexSecond, AlphaMConvex, LogConvex };

/// Convexity class with its parameters. Unused parameters are 1.
struct ClassTag {
  ClassKind kind = ClassKind::Convex;
  double m = 1.0;
  double s = 1.0;
  double alpha = 1.0;

  static ClassTag convex() { return {ClassKind::Convex}; }
  static ClassTag starshaped() { return {ClassKind::Starshaped}; }
  static ClassTag m_convex(double m);
  static ClassTag s_convex(double s);
  static ClassTag alpha_m_convex(double alpha, double m);
  static ClassTag log_convex() { return {ClassKind::LogConvex}; }

  /// Collapses the parameter reductions: (1, m) -> m-convex, m = 1 and
  /// s = 1 -> convex.
  ClassTag canonical() const;
  std::string to_string() const;
  bool operator==(const ClassTag&) const = default;
};

/// True when membership in `have` implies membership in `want` for
/// nonnegative functions on [0, b].
bool implies(const ClassTag& have, const ClassTag& want);

struct Certification {
  enum class Kind { Constructive, Empirical } kind = Kind::Constructive;
  int grid_density = 0;
};

struct CertifiedFunction {
  FunctionSpec spec;
  std::vector<ClassTag> tags;
  Certification certification;

  bool satisfies(const ClassTag& want) const;
};

struct ClassVerdict {
  bool holds = true;
  // Worst violation (only meaningful when !holds); gap = lhs - rhs > 0.
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double gap = 0.0;
};

/// Grid check of the defining inequality of `tag` for x, y uniformly spaced
/// on [0, interval_upper] and t on [0, 1], grid_density points each
/// (endpoints included). A point passes when lhs <= rhs + 1e-10 (1 + |f|).
/// OpenMP-parallel over x; the result does not depend on the thread count.
ClassVerdict check_class(const FunctionSpec& spec, const ClassTag& tag, double interval_upper, int grid_density);

/// Serial reference for check_class.
ClassVerdict check_class_serial(const FunctionSpec& spec, const ClassTag& tag, double interval_upper,
                                int grid_density);

/// Same test on explicit x/y and t grids.
ClassVerdict check_class_on(const FunctionSpec& spec, const ClassTag& tag, const std::vector<double>& points,
                            const std::vector<double>& ts);

/// Runs check_class for every tag; throws HypothesisError naming the first
/// failing tag.
CertifiedFunction certify(const FunctionSpec& spec, std::vector<ClassTag> tags, double interval_upper,
                          int grid_density = 25);

struct SampleOptions {
  /// Restrict to nondecreasing functions (drops decreasing exponentials).
  bool increasing_only = false;
};

/// Randomly parameterized function that provably (or, for (alpha, m)
/// classes, empirically) belongs to `tag` on [0, domain_upper].
/// Deterministic in `seed`.
CertifiedFunction sample_certified(const ClassTag& tag, double domain_upper, std::uint64_t seed,
                                   const SampleOptions& opts = {});

}  // namespace ineq::funclib
