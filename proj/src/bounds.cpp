#include "ineq/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bounds_detail.hpp"
#include "ineq/special.hpp"

namespace ineq::bounds {

using funclib::ClassTag;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Violated: return "ViolatedBy";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(Variant v) { return v == Variant::AsPrinted ? "as-printed" : "as-derived"; }

RatioBounds::RatioBounds(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw HypothesisError("ratio bounds require 0 < m <= M < inf");
  }
}

namespace detail {

Measured Evaluation::integral(const quad::Integrand& f, const Interval& interval) {
  try {
    const auto r = quad::integrate(f, interval, opts_.quad);
    evaluations_ += r.evaluations;
    return {r.value, r.err_est};
  } catch (const AccuracyError& e) {
    evaluations_ += e.evaluations();
    mark_inconclusive(e.what());
    return {e.best_value(), e.err_est()};
  }
}

BoundReport Evaluation::finish(Measured lhs, Measured rhs) const {
  BoundReport r;
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.slack = rhs.value - lhs.value;
  r.tol = lhs.err + rhs.err + opts_.rel_budget * std::max(std::abs(lhs.value), std::abs(rhs.value));
  r.evaluations = evaluations_;
  r.diagnostic = diagnostic_;
  if (inconclusive_ || !std::isfinite(r.slack) || !std::isfinite(r.tol)) {
    r.verdict = Verdict::Inconclusive;
  } else if (r.slack >= -r.tol) {
    r.verdict = Verdict::Holds;
  } else {
    r.verdict = Verdict::Violated;
    r.violation = -r.slack;
  }
  return r;
}

double at(const FunctionSpec& f, double x, const char* name) {
  try {
    return f(x);
  } catch (const DomainError& e) {
    throw HypothesisError(std::string(name) + ": " + e.what());
  }
}

void require_domain(const FunctionSpec& f, double upper, const char* name) {
  if (f.domain_upper() < upper) {
    std::ostringstream msg;
    msg << name << " is defined on [0, " << f.domain_upper() << "] but the bound needs [0, " << upper << "]";
    throw DomainError(msg.str());
  }
}

void require_tag(const CertifiedFunction& f, const ClassTag& tag, const char* name) {
  if (!f.satisfies(tag)) throw HypothesisError(std::string(name) + " is not certified " + tag.to_string());
}

void require_unit(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0)) throw HypothesisError(std::string(name) + " must lie in (0, 1]");
}

namespace {

template <class Check>
void on_grid(const Interval& interval, int grid, Check&& check) {
  for (int i = 0; i < grid; ++i) {
    const double x = (i + 1 == grid) ? interval.b() : interval.a() + interval.length() * i / (grid - 1);
    check(x);
  }
}

}  // namespace

void require_ratio(const FunctionSpec& f, const FunctionSpec& g, const Interval& interval, const RatioBounds& ratio,
                   int grid) {
  on_grid(interval, grid, [&](double x) {
    const double fx = f.eval_unchecked(x);
    const double gx = g.eval_unchecked(x);
    if (!(gx > 0.0) || fx < ratio.lo * gx * (1.0 - 1e-9) || fx > ratio.hi * gx * (1.0 + 1e-9)) {
      std::ostringstream msg;
      msg << "ratio f/g = " << fx / gx << " at x = " << x << " leaves [" << ratio.lo << ", " << ratio.hi << "]";
      throw HypothesisError(msg.str());
    }
  });
}

void require_positive(const FunctionSpec& f, const Interval& interval, int grid, const char* name) {
  on_grid(interval, grid, [&](double x) {
    if (!(f.eval_unchecked(x) > 0.0)) throw HypothesisError(std::string(name) + " must be strictly positive");
  });
}

void require_nondecreasing(const FunctionSpec& f, const Interval& interval, int grid, const char* name) {
  double prev = -std::numeric_limits<double>::infinity();
  on_grid(interval, grid, [&](double x) {
    const double v = f.eval_unchecked(x);
    if (v < prev - 1e-12 * std::abs(prev)) throw HypothesisError(std::string(name) + " must be nondecreasing");
    prev = v;
  });
}

WeightedProductParts weighted_product_parts(const CertifiedFunction& f, const CertifiedFunction& g, double m1,
                                            double m2, const Interval& interval, Evaluation& eval) {
  const double a = interval.a();
  const double b = interval.b();
  require_domain(f.spec, std::max(b, a / m1), "f");
  require_domain(g.spec, std::max(b, a / m2), "g");
  const auto& fs = f.spec;
  const auto& gs = g.spec;
  WeightedProductParts parts;
  parts.up_f = eval.integral([&](double x) { return (x - a) * fs.eval_unchecked(x); }, interval);
  parts.down_f = eval.integral([&](double x) { return (b - x) * fs.eval_unchecked(x); }, interval);
  parts.up_g = eval.integral([&](double x) { return (x - a) * gs.eval_unchecked(x); }, interval);
  parts.down_g = eval.integral([&](double x) { return (b - x) * gs.eval_unchecked(x); }, interval);
  parts.fg = eval.integral([&](double x) { return fs.eval_unchecked(x) * gs.eval_unchecked(x); }, interval);
  parts.fb = at(fs, b, "f");
  parts.gb = at(gs, b, "g");
  parts.fa_m = at(fs, a / m1, "f");
  parts.ga_m = at(gs, a / m2, "g");
  return parts;
}

Measured weighted_product_rhs(const WeightedProductParts& p, double m1, double m2, const Interval& interval) {
  return (1.0 / interval.length()) * p.fg +
         exact(p.fb * p.gb / 3.0 + m1 / 6.0 * p.fa_m * p.gb + m2 / 6.0 * p.fb * p.ga_m +
               m1 * m2 / 3.0 * p.fa_m * p.ga_m);
}

BoundReport rescale(BoundReport r, double c) {
  r.lhs *= c;
  r.rhs *= c;
  r.slack *= c;
  r.tol *= c;
  r.violation *= c;
  return r;
}

}  // namespace detail

using namespace detail;

namespace {

void require_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must be >= 1");
}

void require_weight(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw HypothesisError("weight alpha must lie in [0, 1]");
}

// (1/(b-a)) int f^((x-a)/(b-a)) g^((b-x)/(b-a)) dx
Measured exponent_product_mean(const FunctionSpec& f, const FunctionSpec& g, const Interval& interval,
                               Evaluation& eval) {
  const double a = interval.a();
  const double len = interval.length();
  const auto integral = eval.integral(
      [&](double x) {
        const double w = (x - a) / len;
        return std::pow(f.eval_unchecked(x), w) * std::pow(g.eval_unchecked(x), 1.0 - w);
      },
      interval);
  return (1.0 / len) * integral;
}

// (1/(b-a)) int f^alpha g^(1-alpha) dx
Measured weighted_geometric_mean(const FunctionSpec& f, const FunctionSpec& g, double alpha, const Interval& interval,
                                 Evaluation& eval) {
  const auto integral = eval.integral(
      [&](double x) { return std::pow(f.eval_unchecked(x), alpha) * std::pow(g.eval_unchecked(x), 1.0 - alpha); },
      interval);
  return (1.0 / interval.length()) * integral;
}

Measured p_norm(const FunctionSpec& f, double p, const Interval& interval, Evaluation& eval) {
  return root(eval.integral([&](double x) { return std::pow(f.eval_unchecked(x), p); }, interval), p);
}

Measured sum_p_norm(const FunctionSpec& f, const FunctionSpec& g, double p, const Interval& interval,
                    Evaluation& eval) {
  return root(eval.integral([&](double x) { return std::pow(f.eval_unchecked(x) + g.eval_unchecked(x), p); },
                            interval),
              p);
}

}  // namespace

double reverse_minkowski_constant(const RatioBounds& r) {
  return (r.hi * (r.lo + 1.0) + (r.hi + 1.0)) / ((r.lo + 1.0) * (r.hi + 1.0));
}

RatioBounds estimate_ratio_bounds(const FunctionSpec& f, const FunctionSpec& g, const Interval& interval,
                                  int grid_density) {
  if (grid_density < 2) throw DomainError("estimate_ratio_bounds: grid_density must be >= 2");
  require_domain(f, interval.b(), "f");
  require_domain(g, interval.b(), "g");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i < grid_density; ++i) {
    const double x =
        (i + 1 == grid_density) ? interval.b() : interval.a() + interval.length() * i / (grid_density - 1);
    const double gx = g.eval_unchecked(x);
    if (!(gx > 0.0)) {
      std::ostringstream msg;
      msg << "g vanishes at x = " << x << "; the ratio f/g is unbounded";
      throw HypothesisError(msg.str());
    }
    const double r = f.eval_unchecked(x) / gx;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  constexpr double kGuard = 1e-6;
  return RatioBounds(lo * (1.0 - kGuard), hi * (1.0 + kGuard));
}

HermiteHadamardReport hermite_hadamard_s(const CertifiedFunction& f, double s, const Interval& interval,
                                         const EvalOptions& opts) {
  require_unit(s, "s");
  require_tag(f, ClassTag::s_convex(s), "f");
  require_domain(f.spec, interval.b(), "f");

  Evaluation eval(opts);
  const auto mean = (1.0 / interval.length()) *
                    eval.integral([&](double x) { return f.spec.eval_unchecked(x); }, interval);
  const double mid = std::exp2(s - 1.0) * f.spec(interval.midpoint());
  const double ends = (f.spec(interval.a()) + f.spec(interval.b())) / (s + 1.0);
  return {eval.finish(exact(mid), mean), eval.finish(mean, exact(ends))};
}

BoundReport minkowski(const FunctionSpec& f, const FunctionSpec& g, double p, const Interval& interval,
                      const EvalOptions& opts) {
  require_p(p);
  require_domain(f, interval.b(), "f");
  require_domain(g, interval.b(), "g");
  Evaluation eval(opts);
  const auto lhs = sum_p_norm(f, g, p, interval, eval);
  const auto rhs = p_norm(f, p, interval, eval) + p_norm(g, p, interval, eval);
  return eval.finish(lhs, rhs);
}

BoundReport reverse_minkowski(const FunctionSpec& f, const FunctionSpec& g, double p, const Interval& interval,
                              const RatioBounds& ratio, const EvalOptions& opts) {
  require_p(p);
  require_domain(f, interval.b(), "f");
  require_domain(g, interval.b(), "g");
  require_ratio(f, g, interval, ratio, opts.check_grid);
  Evaluation eval(opts);
  const auto lhs = p_norm(f, p, interval, eval) + p_norm(g, p, interval, eval);
  const auto rhs = reverse_minkowski_constant(ratio) * sum_p_norm(f, g, p, interval, eval);
  return eval.finish(lhs, rhs);
}

BoundReport thm3_exponent_product(const CertifiedFunction& f, const CertifiedFunction& g, double m1, double m2,
                                  const Interval& interval, const EvalOptions& opts) {
  require_unit(m1, "m1");
  require_unit(m2, "m2");
  require_tag(f, ClassTag::m_convex(m1), "f");
  require_tag(g, ClassTag::m_convex(m2), "g");
  const double a = interval.a();
  const double b = interval.b();
  require_domain(f.spec, std::max(b, a / m1), "f");
  require_domain(g.spec, std::max(b, a / m2), "g");

  Evaluation eval(opts);
  const auto lhs = exponent_product_mean(f.spec, g.spec, interval, eval);
  const double rhs = (f.spec(b) + m2 * g.spec(a / m2)) / 3.0 + (g.spec(b) + m1 * f.spec(a / m1)) / 6.0;
  return eval.finish(lhs, exact(rhs));
}

BoundReport thm4_weighted_product(const CertifiedFunction& f, const CertifiedFunction& g, double m1, double m2,
                                  const Interval& interval, const EvalOptions& opts) {
  require_unit(m1, "m1");
  require_unit(m2, "m2");
  require_tag(f, ClassTag::m_convex(m1), "f");
  require_tag(g, ClassTag::m_convex(m2), "g");

  Evaluation eval(opts);
  const auto p = weighted_product_parts(f, g, m1, m2, interval, eval);
  const double len2 = interval.length() * interval.length();
  const auto lhs = (1.0 / len2) * (p.gb * p.up_f + (m2 * p.ga_m) * p.down_f + p.fb * p.up_g + (m1 * p.fa_m) * p.down_g);
  return eval.finish(lhs, weighted_product_rhs(p, m1, m2, interval));
}

BoundReport thm5_minkowski_mconvex(const CertifiedFunction& f, const CertifiedFunction& g, double p, double m1,
                                   double m2, const Interval& interval, const RatioBounds& ratio, Variant variant,
                                   const EvalOptions& opts) {
  require_p(p);
  require_unit(m1, "m1");
  require_unit(m2, "m2");
  require_tag(f, ClassTag::m_convex(m1), "f");
  require_tag(g, ClassTag::m_convex(m2), "g");
  const double a = interval.a();
  const double b = interval.b();
  require_domain(f.spec, std::max(b, a / m1), "f");
  require_domain(g.spec, std::max(b, a / m2), "g");
  require_ratio(f.spec, g.spec, interval, ratio, opts.check_grid);

  Evaluation eval(opts);
  const double c = reverse_minkowski_constant(ratio);
  const auto lhs = (1.0 / c) * (p_norm(f.spec, p, interval, eval) + p_norm(g.spec, p, interval, eval));

  const double big_a = f.spec(b) + g.spec(b);
  const double big_b = m1 * f.spec(a / m1) + m2 * g.spec(a / m2);
  const double prefactor = std::pow(std::exp2(p - 1.0) * interval.length() / (p + 1.0), 1.0 / p);
  double rhs = 0.0;
  if (variant == Variant::AsDerived) {
    rhs = prefactor * std::pow(std::pow(big_a, p) + std::pow(big_b, p), 1.0 / p);
  } else {
    const double diff = std::pow(big_a, p) - std::pow(big_b, p);
    if (p == 1.0) {
      rhs = prefactor * diff;
    } else if (diff < 0.0) {
      std::ostringstream msg;
      msg << "printed right-hand side undefined: A^p - B^p = " << diff << " < 0 has no real 1/p-th root (A = "
          << big_a << ", B = " << big_b << ", p = " << p << ")";
      eval.mark_inconclusive(msg.str());
      rhs = std::numeric_limits<double>::quiet_NaN();
    } else {
      rhs = prefactor * std::pow(diff, 1.0 / p);
    }
  }
  return eval.finish(lhs, exact(rhs));
}

std::array<double, 4> thm6_coefficients(double s1, double s2, Variant variant) {
  const double fb = 1.0 / (s1 + 2.0);
  const double fa = special::beta(2.0, s1 + 1.0);
  const double outer = 1.0 / (s2 + 2.0);
  const double inner = special::beta(2.0, s2 + 1.0);
  // Derived: int (1-t) t^s2 dt = B(2, s2+1) on g(b), int (1-t)^(s2+1) dt on g(a).
  if (variant == Variant::AsDerived) return {fb, fa, inner, outer};
  return {fb, fa, outer, inner};
}

BoundReport thm6_s_exponent_product(const CertifiedFunction& f, const CertifiedFunction& g, double s1, double s2,
                                    const Interval& interval, Variant variant, const EvalOptions& opts) {
  require_unit(s1, "s1");
  require_unit(s2, "s2");
  require_tag(f, ClassTag::s_convex(s1), "f");
  require_tag(g, ClassTag::s_convex(s2), "g");
  require_domain(f.spec, interval.b(), "f");
  require_domain(g.spec, interval.b(), "g");

  Evaluation eval(opts);
  const auto lhs = exponent_product_mean(f.spec, g.spec, interval, eval);
  const auto k = thm6_coefficients(s1, s2, variant);
  const double a = interval.a();
  const double b = interval.b();
  const double rhs = k[0] * f.spec(b) + k[1] * f.spec(a) + k[2] * g.spec(b) + k[3] * g.spec(a);
  return eval.finish(lhs, exact(rhs));
}

BoundReport thm7_s_cauchy_product(const CertifiedFunction& f, const CertifiedFunction& g, double s, double alpha,
                                  const Interval& interval, const EvalOptions& opts) {
  require_unit(s, "s");
  require_weight(alpha);
  require_tag(f, ClassTag::s_convex(s), "f");
  require_tag(g, ClassTag::s_convex(s), "g");
  require_domain(f.spec, interval.b(), "f");
  require_domain(g.spec, interval.b(), "g");

  Evaluation eval(opts);
  const auto lhs = weighted_geometric_mean(f.spec, g.spec, alpha, interval, eval);
  const double a = interval.a();
  const double b = interval.b();
  const double rhs = (alpha * (f.spec(a) + f.spec(b)) + (1.0 - alpha) * (g.spec(a) + g.spec(b))) / (s + 1.0);
  return eval.finish(lhs, exact(rhs));
}

BoundReport thm8_log_cauchy_product(const CertifiedFunction& f, const CertifiedFunction& g, double alpha,
                                    const Interval& interval, const EvalOptions& opts) {
  require_weight(alpha);
  require_tag(f, ClassTag::log_convex(), "f");
  require_tag(g, ClassTag::log_convex(), "g");
  require_domain(f.spec, interval.b(), "f");
  require_domain(g.spec, interval.b(), "g");
  require_positive(f.spec, interval, opts.check_grid, "f");
  require_positive(g.spec, interval, opts.check_grid, "g");

  Evaluation eval(opts);
  const auto lhs = weighted_geometric_mean(f.spec, g.spec, alpha, interval, eval);
  const double a = interval.a();
  const double b = interval.b();
  const double rhs = alpha * special::log_mean(f.spec(a), f.spec(b)) +
                     (1.0 - alpha) * special::log_mean(g.spec(a), g.spec(b));
  return eval.finish(lhs, exact(rhs));
}

std::array<double, 4> thm9_coefficients(double alpha1, double alpha2, Variant variant) {
  const double fb = 1.0 / (alpha1 + 2.0);
  // Derived: int t (1 - t^alpha1) dt = alpha1 / (2 (alpha1 + 2)).
  const double fa = (variant == Variant::AsDerived ? alpha1 : 1.0) / (2.0 * (alpha1 + 2.0));
  const double gb = 1.0 / ((alpha2 + 1.0) * (alpha2 + 2.0));
  const double ga = (alpha2 * alpha2 + 3.0 * alpha2) / (2.0 * (alpha2 + 1.0) * (alpha2 + 2.0));
  return {fb, fa, gb, ga};
}

BoundReport thm9_alpha_m_exponent_product(const CertifiedFunction& f, const CertifiedFunction& g, double alpha1,
                                          double m1, double alpha2, double m2, const Interval& interval,
                                          Variant variant, const EvalOptions& opts) {
  require_unit(alpha1, "alpha1");
  require_unit(alpha2, "alpha2");
  require_unit(m1, "m1");
  require_unit(m2, "m2");
  require_tag(f, ClassTag::alpha_m_convex(alpha1, m1), "f");
  require_tag(g, ClassTag::alpha_m_convex(alpha2, m2), "g");
  const double a = interval.a();
  const double b = interval.b();
  require_domain(f.spec, std::max(b, a / m1), "f");
  require_domain(g.spec, std::max(b, a / m2), "g");

  Evaluation eval(opts);
  const auto lhs = exponent_product_mean(f.spec, g.spec, interval, eval);
  const auto k = thm9_coefficients(alpha1, alpha2, variant);
  const double rhs = k[0] * f.spec(b) + k[1] * m1 * f.spec(a / m1) + k[2] * g.spec(b) + k[3] * m2 * g.spec(a / m2);
  return eval.finish(lhs, exact(rhs));
}

std::array<double, 4> thm10_coefficients(double alpha1, double alpha2, Variant variant) {
  const double both = alpha1 + alpha2 + 1.0;
  const double fbgb = 1.0 / both;
  // int t^alpha1 (1 - t^alpha2) dt
  const double fb_ga = alpha2 / ((alpha1 + 1.0) * both);
  // int t^alpha2 (1 - t^alpha1) dt = alpha1 / ((alpha2 + 1) both); printed with (alpha1 + 1).
  const double fa_gb = alpha1 / (((variant == Variant::AsDerived) ? alpha2 + 1.0 : alpha1 + 1.0) * both);
  const double fa_ga = alpha1 * alpha2 * (alpha1 + alpha2 + 2.0) / ((alpha1 + 1.0) * (alpha2 + 1.0) * both);
  return {fbgb, fb_ga, fa_gb, fa_ga};
}

BoundReport thm10_alpha_m_weighted_product(const CertifiedFunction& f, const CertifiedFunction& g, double alpha1,
                                           double m1, double alpha2, double m2, const Interval& interval,
                                           Variant variant, const EvalOptions& opts) {
  require_unit(alpha1, "alpha1");
  require_unit(alpha2, "alpha2");
  require_unit(m1, "m1");
  require_unit(m2, "m2");
  require_tag(f, ClassTag::alpha_m_convex(alpha1, m1), "f");
  require_tag(g, ClassTag::alpha_m_convex(alpha2, m2), "g");
  const double a = interval.a();
  const double b = interval.b();
  const double len = interval.length();
  require_domain(f.spec, std::max(b, a / m1), "f");
  require_domain(g.spec, std::max(b, a / m2), "g");
  const auto& fs = f.spec;
  const auto& gs = g.spec;

  Evaluation eval(opts);
  const double len1 = std::pow(len, alpha1);
  const double len2 = std::pow(len, alpha2);
  const auto up_f = eval.integral([&](double x) { return std::pow(x - a, alpha2) * fs.eval_unchecked(x); }, interval);
  const auto down_f =
      eval.integral([&](double x) { return (len2 - std::pow(x - a, alpha2)) * fs.eval_unchecked(x); }, interval);
  const auto up_g = eval.integral([&](double x) { return std::pow(x - a, alpha1) * gs.eval_unchecked(x); }, interval);
  const auto down_g =
      eval.integral([&](double x) { return (len1 - std::pow(x - a, alpha1)) * gs.eval_unchecked(x); }, interval);
  const auto fg = eval.integral([&](double x) { return fs.eval_unchecked(x) * gs.eval_unchecked(x); }, interval);

  const double fb = fs(b);
  const double gb = gs(b);
  const double fa_m = fs(a / m1);
  const double ga_m = gs(a / m2);
  const double norm_f = len2 * len;  // (b-a)^(alpha2+1)
  const double norm_g = len1 * len;  // (b-a)^(alpha1+1)
  const auto lhs = (gb / norm_f) * up_f + (m2 * ga_m / norm_f) * down_f + (fb / norm_g) * up_g +
                   (m1 * fa_m / norm_g) * down_g;

  const auto k = thm10_coefficients(alpha1, alpha2, variant);
  const auto rhs = (1.0 / len) * fg + exact(k[0] * fb * gb + k[1] * m2 * ga_m * fb + k[2] * m1 * fa_m * gb +
                                            k[3] * m1 * m2 * fa_m * ga_m);
  return eval.finish(lhs, rhs);
}

}  // namespace ineq::bounds
