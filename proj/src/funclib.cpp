#include "ineq/funclib.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <variant>

#include "ineq/errors.hpp"

namespace ineq::funclib {

struct FunctionSpec::Node {
  struct Power {
    double c, s;
  };
  struct Affine {
    double p, q;
  };
  struct Exponential {
    double c, k;
  };
  struct Constant {
    double c;
  };
  struct Sum {
    std::vector<FunctionSpec> terms;
  };
  struct Scale {
    double lambda;
    FunctionSpec inner;
  };
  std::variant<Power, Affine, Exponential, Constant, Sum, Scale> body;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::Power: return "Power";
    case Family::Affine: return "Affine";
    case Family::Exponential: return "Exponential";
    case Family::Constant: return "Constant";
    case Family::NonNegSum: return "NonNegSum";
    case Family::Scale: return "Scale";
  }
  return "?";
}

FunctionSpec::FunctionSpec() : FunctionSpec(constant(0.0, 1.0)) {}

FunctionSpec::FunctionSpec(std::shared_ptr<const Node> node, double domain_upper)
    : node_(std::move(node)), domain_upper_(domain_upper) {
  require(domain_upper_ > 0.0 && std::isfinite(domain_upper_), "function domain_upper must be positive and finite");
}

FunctionSpec FunctionSpec::power(double c, double s, double domain_upper) {
  require(c >= 0.0 && std::isfinite(c), "Power: c must be >= 0");
  require(s > 0.0 && std::isfinite(s), "Power: exponent must be > 0");
  return {std::make_shared<const Node>(Node{Node::Power{c, s}}), domain_upper};
}

FunctionSpec FunctionSpec::affine(double p, double q, double domain_upper) {
  require(p >= 0.0 && q >= 0.0 && std::isfinite(p) && std::isfinite(q), "Affine: p and q must be >= 0");
  return {std::make_shared<const Node>(Node{Node::Affine{p, q}}), domain_upper};
}

FunctionSpec FunctionSpec::exponential(double c, double k, double domain_upper) {
  require(c > 0.0 && std::isfinite(c) && std::isfinite(k), "Exponential: c must be > 0");
  return {std::make_shared<const Node>(Node{Node::Exponential{c, k}}), domain_upper};
}

FunctionSpec FunctionSpec::constant(double c, double domain_upper) {
  require(c >= 0.0 && std::isfinite(c), "Constant: c must be >= 0");
  return {std::make_shared<const Node>(Node{Node::Constant{c}}), domain_upper};
}

FunctionSpec FunctionSpec::sum(std::vector<FunctionSpec> terms) {
  require(!terms.empty(), "NonNegSum: needs at least one term");
  double upper = terms.front().domain_upper();
  for (const auto& t : terms) upper = std::min(upper, t.domain_upper());
  return {std::make_shared<const Node>(Node{Node::Sum{std::move(terms)}}), upper};
}

FunctionSpec FunctionSpec::scale(double lambda, FunctionSpec inner) {
  require(lambda >= 0.0 && std::isfinite(lambda), "Scale: lambda must be >= 0");
  const double upper = inner.domain_upper();
  return {std::make_shared<const Node>(Node{Node::Scale{lambda, std::move(inner)}}), upper};
}

Family FunctionSpec::family() const {
  return std::visit(overloaded{[](const Node::Power&) { return Family::Power; },
                               [](const Node::Affine&) { return Family::Affine; },
                               [](const Node::Exponential&) { return Family::Exponential; },
                               [](const Node::Constant&) { return Family::Constant; },
                               [](const Node::Sum&) { return Family::NonNegSum; },
                               [](const Node::Scale&) { return Family::Scale; }},
                    node_->body);
}

std::vector<double> FunctionSpec::coefficients() const {
  return std::visit(overloaded{[](const Node::Power& n) { return std::vector<double>{n.c, n.s}; },
                               [](const Node::Affine& n) { return std::vector<double>{n.p, n.q}; },
                               [](const Node::Exponential& n) { return std::vector<double>{n.c, n.k}; },
                               [](const Node::Constant& n) { return std::vector<double>{n.c}; },
                               [](const Node::Sum&) { return std::vector<double>{}; },
                               [](const Node::Scale& n) { return std::vector<double>{n.lambda}; }},
                    node_->body);
}

std::vector<FunctionSpec> FunctionSpec::children() const {
  if (const auto* sum = std::get_if<Node::Sum>(&node_->body)) return sum->terms;
  if (const auto* sc = std::get_if<Node::Scale>(&node_->body)) return {sc->inner};
  return {};
}

double FunctionSpec::operator()(double x) const {
  if (!(x >= 0.0) || x > domain_upper_) {
    throw DomainError("evaluate: x = " + fmt(x) + " outside [0, " + fmt(domain_upper_) + "]");
  }
  return eval_unchecked(x);
}

double FunctionSpec::eval_unchecked(double x) const {
  return std::visit(overloaded{[x](const Node::Power& n) { return n.c * std::pow(x, n.s); },
                               [x](const Node::Affine& n) { return n.p * x + n.q; },
                               [x](const Node::Exponential& n) { return n.c * std::exp(n.k * x); },
                               [](const Node::Constant& n) { return n.c; },
                               [x](const Node::Sum& n) {
                                 double total = 0.0;
                                 for (const auto& t : n.terms) total += t.eval_unchecked(x);
                                 return total;
                               },
                               [x](const Node::Scale& n) { return n.lambda * n.inner.eval_unchecked(x); }},
                    node_->body);
}

FunctionSpec FunctionSpec::with_domain(double domain_upper) const {
  if (const auto* sum = std::get_if<Node::Sum>(&node_->body)) {
    std::vector<FunctionSpec> terms;
    for (const auto& t : sum->terms) terms.push_back(t.with_domain(domain_upper));
    return FunctionSpec::sum(std::move(terms));
  }
  if (const auto* sc = std::get_if<Node::Scale>(&node_->body)) {
    return FunctionSpec::scale(sc->lambda, sc->inner.with_domain(domain_upper));
  }
  return {node_, domain_upper};
}

bool FunctionSpec::is_constant() const {
  return std::visit(overloaded{[](const Node::Power& n) { return n.c == 0.0; },
                               [](const Node::Affine& n) { return n.p == 0.0; },
                               [](const Node::Exponential& n) { return n.k == 0.0; },
                               [](const Node::Constant&) { return true; },
                               [](const Node::Sum& n) {
                                 return std::all_of(n.terms.begin(), n.terms.end(),
                                                    [](const FunctionSpec& t) { return t.is_constant(); });
                               },
                               [](const Node::Scale& n) { return n.lambda == 0.0 || n.inner.is_constant(); }},
                    node_->body);
}

std::string FunctionSpec::to_string() const {
  return std::visit(
      overloaded{[](const Node::Power& n) { return "Power(" + fmt(n.c) + ", " + fmt(n.s) + ")"; },
                 [](const Node::Affine& n) { return "Affine(" + fmt(n.p) + ", " + fmt(n.q) + ")"; },
                 [](const Node::Exponential& n) { return "Exponential(" + fmt(n.c) + ", " + fmt(n.k) + ")"; },
                 [](const Node::Constant& n) { return "Constant(" + fmt(n.c) + ")"; },
                 [](const Node::Sum& n) {
                   std::string out = "NonNegSum[";
                   for (std::size_t i = 0; i < n.terms.size(); ++i) {
                     if (i) out += ", ";
                     out += n.terms[i].to_string();
                   }
                   return out + "]";
                 },
                 [](const Node::Scale& n) { return "Scale(" + fmt(n.lambda) + ", " + n.inner.to_string() + ")"; }},
      node_->body);
}

bool FunctionSpec::operator==(const FunctionSpec& other) const {
  return domain_upper_ == other.domain_upper_ && to_string() == other.to_string();
}

// ---------------------------------------------------------------------------
// Class tags

ClassTag ClassTag::m_convex(double m) {
  require(m > 0.0 && m <= 1.0, "m-convex: m must lie in (0, 1]");
  return {ClassKind::MConvex, m};
}

ClassTag ClassTag::s_convex(double s) {
  require(s > 0.0 && s <= 1.0, "s-convex: s must lie in (0, 1]");
  return {ClassKind::SConvexSecond, 1.0, s};
}

ClassTag ClassTag::alpha_m_convex(double alpha, double m) {
  require(alpha > 0.0 && alpha <= 1.0 && m > 0.0 && m <= 1.0, "(alpha, m)-convex: parameters must lie in (0, 1]");
  return {ClassKind::AlphaMConvex, m, 1.0, alpha};
}

ClassTag ClassTag::canonical() const {
  switch (kind) {
    case ClassKind::AlphaMConvex:
      if (alpha == 1.0) return ClassTag{ClassKind::MConvex, m}.canonical();
      return *this;
    case ClassKind::MConvex:
      if (m == 1.0) return convex();
      return {ClassKind::MConvex, m};
    case ClassKind::SConvexSecond:
      if (s == 1.0) return convex();
      return {ClassKind::SConvexSecond, 1.0, s};
    default:
      return {kind};
  }
}

std::string ClassTag::to_string() const {
  switch (kind) {
    case ClassKind::Convex: return "Convex";
    case ClassKind::Starshaped: return "Starshaped";
    case ClassKind::MConvex: return "MConvex(" + fmt(m) + ")";
    case ClassKind::SConvexSecond: return "SConvexSecond(" + fmt(s) + ")";
    case ClassKind::AlphaMConvex: return "AlphaMConvex(" + fmt(alpha) + ", " + fmt(m) + ")";
    case ClassKind::LogConvex: return "LogConvex";
  }
  return "?";
}

bool implies(const ClassTag& have_raw, const ClassTag& want_raw) {
  const ClassTag have = have_raw.canonical();
  const ClassTag want = want_raw.canonical();
  if (have == want) return true;
  switch (have.kind) {
    case ClassKind::LogConvex:
      return implies(ClassTag::convex(), want);
    case ClassKind::Convex:
      // t <= t^s on [0, 1] and f >= 0.
      return want.kind == ClassKind::SConvexSecond;
    case ClassKind::MConvex:
      // m < 1 forces f(0) <= 0, which gives n-convexity for every n <= m
      // and the starshaped property (n -> 0).
      return (want.kind == ClassKind::MConvex && want.m <= have.m) || want.kind == ClassKind::Starshaped;
    case ClassKind::SConvexSecond:
      return want.kind == ClassKind::SConvexSecond && want.s <= have.s;
    case ClassKind::AlphaMConvex:
    case ClassKind::Starshaped:
      return false;
  }
  return false;
}

bool CertifiedFunction::satisfies(const ClassTag& want) const {
  return std::any_of(tags.begin(), tags.end(), [&](const ClassTag& t) { return implies(t, want); });
}

// ---------------------------------------------------------------------------
// Empirical class predicates

namespace {

constexpr double kClassTol = 1e-10;

// lhs/rhs of the defining inequality at (x, y, t); y unused for Starshaped.
struct Sides {
  double lhs;
  double rhs;
  double magnitude;
};

Sides class_sides(const FunctionSpec& f, const ClassTag& tag, double x, double y, double t) {
  const double fx = f.eval_unchecked(x);
  const double fy = f.eval_unchecked(y);
  double point = 0.0;
  double rhs = 0.0;
  switch (tag.kind) {
    case ClassKind::Convex:
      point = t * x + (1.0 - t) * y;
      rhs = t * fx + (1.0 - t) * fy;
      break;
    case ClassKind::Starshaped:
      point = t * x;
      rhs = t * fx;
      break;
    case ClassKind::MConvex:
      point = t * x + tag.m * (1.0 - t) * y;
      rhs = t * fx + tag.m * (1.0 - t) * fy;
      break;
    case ClassKind::SConvexSecond:
      point = t * x + (1.0 - t) * y;
      rhs = std::pow(t, tag.s) * fx + std::pow(1.0 - t, tag.s) * fy;
      break;
    case ClassKind::AlphaMConvex: {
      const double ta = std::pow(t, tag.alpha);
      point = t * x + tag.m * (1.0 - t) * y;
      rhs = ta * fx + tag.m * (1.0 - ta) * fy;
      break;
    }
    case ClassKind::LogConvex:
      point = t * x + (1.0 - t) * y;
      rhs = std::pow(fx, t) * std::pow(fy, 1.0 - t);
      break;
  }
  // A convex combination of in-domain points may round one ulp past the end.
  const double upper = f.domain_upper();
  if (point > upper && point <= upper * (1.0 + 8 * std::numeric_limits<double>::epsilon())) point = upper;
  if (point > upper) {
    throw DomainError("check_class: combination point " + fmt(point) + " leaves the domain [0, " +
                      fmt(f.domain_upper()) + "]");
  }
  const double lhs = f.eval_unchecked(std::max(point, 0.0));
  const double magnitude = std::max({std::abs(lhs), std::abs(rhs), std::abs(fx), std::abs(fy)});
  return {lhs, rhs, magnitude};
}

// Worst violation over one x row; gap ties keep the earliest (y, t).
ClassVerdict check_row(const FunctionSpec& f, const ClassTag& tag, double x, const std::vector<double>& points,
                       const std::vector<double>& ts) {
  ClassVerdict worst;
  if (tag.kind == ClassKind::LogConvex && !(f.eval_unchecked(x) > 0.0)) {
    return {false, x, x, 1.0, std::numeric_limits<double>::infinity()};
  }
  for (double y : points) {
    for (double t : ts) {
      const Sides s = class_sides(f, tag, x, y, t);
      const double gap = s.lhs - s.rhs;
      if (!(gap <= kClassTol * (1.0 + s.magnitude))) {
        const double g = std::isnan(gap) ? std::numeric_limits<double>::infinity() : gap;
        if (worst.holds || g > worst.gap) worst = {false, x, y, t, g};
      }
    }
    if (tag.kind == ClassKind::Starshaped) break;  // y does not enter
  }
  return worst;
}

// Row verdicts merged in row order so the answer is thread-count independent.
ClassVerdict merge(const std::vector<ClassVerdict>& rows) {
  ClassVerdict out;
  for (const auto& r : rows) {
    if (!r.holds && (out.holds || r.gap > out.gap)) out = r;
  }
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts[i] = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
  if (n > 1) pts.back() = hi;
  return pts;
}

void check_grid_args(const FunctionSpec& f, double interval_upper, int grid_density) {
  if (grid_density < 2) throw DomainError("check_class: grid_density must be >= 2");
  if (!(interval_upper > 0.0) || interval_upper > f.domain_upper()) {
    throw DomainError("check_class: interval_upper " + fmt(interval_upper) + " exceeds domain_upper " +
                      fmt(f.domain_upper()));
  }
}

}  // namespace

ClassVerdict check_class_on(const FunctionSpec& spec, const ClassTag& tag, const std::vector<double>& points,
                            const std::vector<double>& ts) {
  std::vector<ClassVerdict> rows(points.size());
  const long n = static_cast<long>(points.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      rows[i] = check_row(spec, tag, points[i], points, ts);
    } catch (...) {
#pragma omp critical(ineq_check_class_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return merge(rows);
}

ClassVerdict check_class(const FunctionSpec& spec, const ClassTag& tag, double interval_upper, int grid_density) {
  check_grid_args(spec, interval_upper, grid_density);
  return check_class_on(spec, tag, uniform_grid(0.0, interval_upper, grid_density),
                        uniform_grid(0.0, 1.0, grid_density));
}

ClassVerdict check_class_serial(const FunctionSpec& spec, const ClassTag& tag, double interval_upper,
                                int grid_density) {
  check_grid_args(spec, interval_upper, grid_density);
  const auto points = uniform_grid(0.0, interval_upper, grid_density);
  const auto ts = uniform_grid(0.0, 1.0, grid_density);
  std::vector<ClassVerdict> rows;
  for (double x : points) rows.push_back(check_row(spec, tag, x, points, ts));
  return merge(rows);
}

CertifiedFunction certify(const FunctionSpec& spec, std::vector<ClassTag> tags, double interval_upper,
                          int grid_density) {
  for (const auto& tag : tags) {
    const auto verdict = check_class(spec, tag, interval_upper, grid_density);
    if (!verdict.holds) {
      std::ostringstream msg;
      msg.precision(6);
      msg << spec.to_string() << " is not " << tag.to_string() << " on [0, " << interval_upper
          << "]: violated at x=" << verdict.x << " y=" << verdict.y << " t=" << verdict.t
          << " by " << verdict.gap;
      throw HypothesisError(msg.str());
    }
  }
  return {spec, std::move(tags), {Certification::Kind::Empirical, grid_density}};
}

// ---------------------------------------------------------------------------
// Certified generators

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  int count(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

// Nonnegative convex function. With zero_at_origin every piece vanishes at 0,
// which makes the sum m-convex for all m in (0, 1] and starshaped.
FunctionSpec draw_convex(Draw& d, double upper, bool zero_at_origin, const SampleOptions& opts) {
  if (!zero_at_origin && d.chance(0.15)) return FunctionSpec::constant(d.uniform(0.1, 2.0), upper);
  const int pieces = d.count(1, 3);
  std::vector<FunctionSpec> terms;
  for (int i = 0; i < pieces; ++i) {
    const int kind = zero_at_origin ? d.count(0, 1) : d.count(0, 3);
    switch (kind) {
      case 0:
        terms.push_back(FunctionSpec::affine(d.uniform(0.1, 2.0), zero_at_origin ? 0.0 : d.uniform(0.0, 2.0), upper));
        break;
      case 1:
        terms.push_back(FunctionSpec::power(d.uniform(0.1, 2.0), d.uniform(1.0, 3.0), upper));
        break;
      case 2:
        terms.push_back(FunctionSpec::constant(d.uniform(0.1, 2.0), upper));
        break;
      default: {
        // Keep c * exp(k * upper) moderate on large extended domains.
        const double k_max = std::min(2.0, 4.0 / upper);
        const double k = d.uniform(opts.increasing_only ? 0.0 : -k_max, k_max);
        terms.push_back(FunctionSpec::exponential(d.uniform(0.1, 2.0), k, upper));
        break;
      }
    }
  }
  return terms.size() == 1 ? terms.front() : FunctionSpec::sum(std::move(terms));
}

FunctionSpec draw_s_convex(Draw& d, double s, double upper, const SampleOptions& opts) {
  if (d.chance(0.15)) return FunctionSpec::constant(d.uniform(0.1, 2.0), upper);
  FunctionSpec lead = FunctionSpec::power(d.uniform(0.1, 2.0), s, upper);
  if (d.chance(0.5)) return lead;
  return FunctionSpec::sum({lead, draw_convex(d, upper, false, opts)});
}

FunctionSpec draw_log_convex(Draw& d, double upper, const SampleOptions& opts) {
  if (d.chance(0.15)) return FunctionSpec::constant(d.uniform(0.1, 2.0), upper);
  const double k_max = std::min(2.0, 4.0 / upper);
  const int pieces = d.count(1, 2);
  std::vector<FunctionSpec> terms;
  for (int i = 0; i < pieces; ++i) {
    terms.push_back(FunctionSpec::exponential(d.uniform(0.1, 2.0), d.uniform(opts.increasing_only ? 0.0 : -k_max, k_max),
                                              upper));
  }
  return terms.size() == 1 ? terms.front() : FunctionSpec::sum(std::move(terms));
}

// t grid with log-spaced refinement toward both ends, where t^alpha moves fastest.
std::vector<double> refined_ts() {
  std::vector<double> ts = uniform_grid(0.0, 1.0, 41);
  for (double e = -8.0; e < -1.0; e += 0.25) {
    ts.push_back(std::pow(10.0, e));
    ts.push_back(1.0 - std::pow(10.0, e));
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

CertifiedFunction sample_alpha_m(Draw& d, const ClassTag& tag, double upper) {
  const ClassTag want = ClassTag::alpha_m_convex(tag.alpha, tag.m);
  if (tag.m == 1.0) {
    // Only constants: for f(x) < f(y) the t -> 0 limit of the definition fails.
    const auto f = FunctionSpec::constant(d.uniform(0.1, 2.0), upper);
    return {f, {want, ClassTag::convex(), ClassTag::log_convex()}, {Certification::Kind::Constructive, 0}};
  }
  const auto points = uniform_grid(0.0, upper, 25);
  const auto ts = refined_ts();
  constexpr int kAttempts = 12;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const double k_hi = 3.0 + 9.0 * attempt / (kAttempts - 1);
    const int pieces = d.count(1, 2);
    std::vector<FunctionSpec> terms;
    for (int i = 0; i < pieces; ++i) {
      terms.push_back(FunctionSpec::power(d.uniform(0.1, 2.0) / std::pow(upper, k_hi - 1.0), d.uniform(2.0, k_hi), upper));
    }
    const auto f = terms.size() == 1 ? terms.front() : FunctionSpec::sum(std::move(terms));
    if (check_class(f, want, upper, 25).holds && check_class_on(f, want, points, ts).holds) {
      return {f, {want}, {Certification::Kind::Empirical, 25}};
    }
  }
  // The zero function belongs to every class.
  const auto zero = FunctionSpec::constant(0.0, upper);
  return {zero, {want, ClassTag::convex(), ClassTag::starshaped(), ClassTag::m_convex(tag.m)},
          {Certification::Kind::Constructive, 0}};
}

}  // namespace

CertifiedFunction sample_certified(const ClassTag& tag, double domain_upper, std::uint64_t seed,
                                   const SampleOptions& opts) {
  require(domain_upper > 0.0, "sample_certified: domain_upper must be positive");
  Draw d(seed);
  const Certification constructive{Certification::Kind::Constructive, 0};

  switch (tag.canonical().kind) {
    case ClassKind::Convex: {
      const auto f = draw_convex(d, domain_upper, false, opts);
      return {f, {tag, ClassTag::convex()}, constructive};
    }
    case ClassKind::MConvex:
    case ClassKind::Starshaped: {
      const auto f = draw_convex(d, domain_upper, true, opts);
      return {f, {tag, ClassTag::convex(), ClassTag::m_convex(tag.kind == ClassKind::MConvex ? tag.m : 1.0),
                  ClassTag::starshaped()},
              constructive};
    }
    case ClassKind::SConvexSecond: {
      const auto f = draw_s_convex(d, tag.s, domain_upper, opts);
      return {f, {tag}, constructive};
    }
    case ClassKind::LogConvex: {
      const auto f = draw_log_convex(d, domain_upper, opts);
      return {f, {tag, ClassTag::convex()}, constructive};
    }
    case ClassKind::AlphaMConvex:
      return sample_alpha_m(d, tag, domain_upper);
  }
  throw DomainError("sample_certified: unsupported tag");
}

}  // namespace ineq::funclib
