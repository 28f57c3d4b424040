#include <cmath>
#include <string>

#include "bounds_detail.hpp"
#include "ineq/bounds.hpp"

namespace ineq::bounds {

using funclib::ClassTag;
using namespace detail;

namespace {

void require_convex_pair(const CertifiedFunction& f, const CertifiedFunction& g) {
  require_tag(f, ClassTag::convex(), "f");
  require_tag(g, ClassTag::convex(), "g");
}

void require_unit_function(const FunctionSpec& g, const Interval& interval, int grid) {
  for (int i = 0; i < grid; ++i) {
    const double x = interval.a() + interval.length() * i / (grid - 1);
    if (std::abs(g.eval_unchecked(std::min(x, interval.b())) - 1.0) > 1e-15) {
      throw HypothesisError("corollary requires g(x) = 1");
    }
  }
}

// C2 restricted to nondecreasing f, g: the g(b) and f(b) weights on the
// left are lowered to g(a) and f(a).
BoundReport increasing_weighted_product(const CertifiedFunction& f, const CertifiedFunction& g,
                                        const Interval& interval, const EvalOptions& opts) {
  require_convex_pair(f, g);
  require_domain(f.spec, interval.b(), "f");
  require_domain(g.spec, interval.b(), "g");
  require_nondecreasing(f.spec, interval, opts.check_grid, "f");
  require_nondecreasing(g.spec, interval, opts.check_grid, "g");
  Evaluation eval(opts);
  const auto p = weighted_product_parts(f, g, 1.0, 1.0, interval, eval);
  const double len2 = interval.length() * interval.length();
  const auto lhs = (1.0 / len2) * (p.ga_m * (p.up_f + p.down_f) + p.fa_m * (p.up_g + p.down_g));
  return eval.finish(lhs, weighted_product_rhs(p, 1.0, 1.0, interval));
}

}  // namespace

bool has_printed_variant(Corollary id) {
  return id == Corollary::C5 || id == Corollary::C6 || id == Corollary::C7;
}

BoundReport corollary_preset(Corollary id, const CertifiedFunction& f, const CertifiedFunction& g,
                             const Interval& interval, Variant variant, const CorollaryParams& params,
                             const EvalOptions& opts) {
  switch (id) {
    case Corollary::C1:
      require_convex_pair(f, g);
      return thm3_exponent_product(f, g, 1.0, 1.0, interval, opts);
    case Corollary::C2:
      // 1/3 M(a,b) + 1/6 N(a,b) is the m1 = m2 = 1 right-hand side regrouped.
      require_convex_pair(f, g);
      return thm4_weighted_product(f, g, 1.0, 1.0, interval, opts);
    case Corollary::C3:
      return increasing_weighted_product(f, g, interval, opts);
    case Corollary::C4:
      require_convex_pair(f, g);
      require_domain(g.spec, interval.b(), "g");
      require_unit_function(g.spec, interval, opts.check_grid);
      return thm4_weighted_product(f, g, 1.0, 1.0, interval, opts);
    case Corollary::C5: {
      require_convex_pair(f, g);
      const auto ratio = estimate_ratio_bounds(f.spec, g.spec, interval, opts.check_grid);
      // int (f + g) <= c (b - a)/2 (A -/+ B): the p = 1 case multiplied through by c.
      const auto r = thm5_minkowski_mconvex(f, g, 1.0, 1.0, 1.0, interval, ratio, variant, opts);
      return rescale(r, reverse_minkowski_constant(ratio));
    }
    case Corollary::C6: {
      require_convex_pair(f, g);
      const auto ratio = estimate_ratio_bounds(f.spec, g.spec, interval, opts.check_grid);
      return thm5_minkowski_mconvex(f, g, params.p, 1.0, 1.0, interval, ratio, variant, opts);
    }
    case Corollary::C7:
      require_convex_pair(f, g);
      return thm6_s_exponent_product(f, g, 1.0, 1.0, interval, variant, opts);
    case Corollary::C8:
      return thm9_alpha_m_exponent_product(f, g, 1.0, params.m1, 1.0, params.m2, interval, Variant::AsDerived, opts);
    case Corollary::C9:
      return thm10_alpha_m_weighted_product(f, g, 1.0, params.m1, 1.0, params.m2, interval, Variant::AsDerived,
                                            opts);
  }
  throw DomainError("unknown corollary");
}

}  // namespace ineq::bounds
