#include "ineq/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ineq/errors.hpp"

namespace ineq::harness {

using bounds::EvalOptions;
using funclib::CertifiedFunction;
using funclib::ClassTag;
using funclib::SampleOptions;

namespace {

struct IdName {
  TheoremId id;
  const char* name;
};

constexpr IdName kIds[] = {
    {TheoremId::HHL, "HHL"}, {TheoremId::HHR, "HHR"}, {TheoremId::MINK, "MINK"}, {TheoremId::RMINK, "RMINK"},
    {TheoremId::T3, "T3"},   {TheoremId::T4, "T4"},   {TheoremId::T5, "T5"},     {TheoremId::T6, "T6"},
    {TheoremId::T7, "T7"},   {TheoremId::T8, "T8"},   {TheoremId::T9, "T9"},     {TheoremId::T10, "T10"},
    {TheoremId::C1, "C1"},   {TheoremId::C2, "C2"},   {TheoremId::C3, "C3"},     {TheoremId::C4, "C4"},
    {TheoremId::C5, "C5"},   {TheoremId::C6, "C6"},   {TheoremId::C7, "C7"},     {TheoremId::C8, "C8"},
    {TheoremId::C9, "C9"},
};

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t case_seed(std::uint64_t seed, TheoremId id, std::size_t case_id) {
  return splitmix(splitmix(seed ^ (static_cast<std::uint64_t>(id) + 1) * 0x632be59bd9b4e019ULL) + case_id);
}

}  // namespace

std::string to_string(TheoremId id) {
  for (const auto& e : kIds) {
    if (e.id == id) return e.name;
  }
  return "?";
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& e : kIds) out.push_back(e.id);
    return out;
  }();
  return ids;
}

std::vector<TheoremId> parse_theorem_ids(const std::string& text) {
  std::vector<TheoremId> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                token.end());
    if (token.empty()) continue;
    std::string key = upper(token);
    if (key.rfind("THM", 0) == 0) key = "T" + key.substr(3);
    if (key == "HH") {
      out.push_back(TheoremId::HHL);
      out.push_back(TheoremId::HHR);
      continue;
    }
    if (key == "HH-LEFT" || key == "HH_LEFT") key = "HHL";
    if (key == "HH-RIGHT" || key == "HH_RIGHT") key = "HHR";
    const auto* hit = std::find_if(std::begin(kIds), std::end(kIds), [&](const IdName& e) { return key == e.name; });
    if (hit == std::end(kIds)) throw std::invalid_argument("unknown theorem id '" + token + "'");
    out.push_back(hit->id);
  }
  std::vector<TheoremId> unique;
  for (auto id : out) {
    if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(id);
  }
  return unique;
}

bool has_printed_variant(TheoremId id) {
  switch (id) {
    case TheoremId::T5:
    case TheoremId::T6:
    case TheoremId::T9:
    case TheoremId::T10:
    case TheoremId::C5:
    case TheoremId::C6:
    case TheoremId::C7:
      return true;
    default:
      return false;
  }
}

Variant parse_variant(const std::string& text) {
  const std::string key = upper(text);
  if (key == "AS-PRINTED" || key == "ASPRINTED" || key == "PRINTED") return Variant::AsPrinted;
  if (key == "AS-DERIVED" || key == "ASDERIVED" || key == "DERIVED") return Variant::AsDerived;
  throw std::invalid_argument("unknown variant '" + text + "'");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Checked: return "checked";
    case Status::Skipped: return "skipped";
    case Status::Error: return "error";
  }
  return "?";
}

double required_domain(const TheoremCase& c) {
  double upper = c.interval.b();
  for (const char* key : {"m1", "m2"}) {
    const auto it = c.params.find(key);
    if (it != c.params.end()) upper = std::max(upper, c.interval.a() / it->second);
  }
  return upper;
}

std::size_t Report::violations() const {
  std::size_t n = 0;
  for (const auto& s : summary) n += s.violations;
  return n;
}

// ---------------------------------------------------------------------------
// Case generation

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  std::uint64_t next() { return rng_(); }

  /// (0, 1] with an exact 1 one time in ten.
  double unit() { return chance(0.1) ? 1.0 : 1.0 - uniform(0.0, 1.0); }
  /// [0, 1] weight with an exact 1 one time in ten.
  double weight() { return chance(0.1) ? 1.0 : uniform(0.0, 1.0); }
  double exponent_p() { return chance(0.1) ? 1.0 : uniform(1.0, 4.0); }

  Interval interval(bool positive) {
    const double a = positive ? uniform(0.1, 2.0) : (chance(0.2) ? 0.0 : uniform(0.0, 2.0));
    return Interval(a, a + uniform(0.1, 3.0));
  }

 private:
  std::mt19937_64 rng_;
};

bool needs_positive(TheoremId id) {
  return id == TheoremId::RMINK || id == TheoremId::T5 || id == TheoremId::C5 || id == TheoremId::C6;
}

struct Tags {
  std::optional<ClassTag> f;
  std::optional<ClassTag> g;
};

Tags required_tags(const TheoremCase& c) {
  const auto p = [&](const char* key) { return c.params.at(key); };
  switch (c.theorem) {
    case TheoremId::HHL:
    case TheoremId::HHR:
      return {ClassTag::s_convex(p("s")), std::nullopt};
    case TheoremId::MINK:
    case TheoremId::RMINK:
      return {};
    case TheoremId::T3:
    case TheoremId::T4:
    case TheoremId::T5:
    case TheoremId::C8:
    case TheoremId::C9:
      return {ClassTag::m_convex(p("m1")), ClassTag::m_convex(p("m2"))};
    case TheoremId::T6:
      return {ClassTag::s_convex(p("s1")), ClassTag::s_convex(p("s2"))};
    case TheoremId::T7:
      return {ClassTag::s_convex(p("s")), ClassTag::s_convex(p("s"))};
    case TheoremId::T8:
      return {ClassTag::log_convex(), ClassTag::log_convex()};
    case TheoremId::T9:
    case TheoremId::T10:
      return {ClassTag::alpha_m_convex(p("alpha1"), p("m1")), ClassTag::alpha_m_convex(p("alpha2"), p("m2"))};
    default:
      return {ClassTag::convex(), ClassTag::convex()};
  }
}

// Draws the theorem's parameters (or their extremal values).
std::map<std::string, double> draw_params(TheoremId id, Draw& d, bool extremal) {
  const auto unit = [&] { return extremal ? 1.0 : d.unit(); };
  switch (id) {
    case TheoremId::HHL: return {{"s", extremal ? 1.0 : d.unit()}};
    case TheoremId::HHR: return {{"s", d.unit()}};
    case TheoremId::MINK:
    case TheoremId::RMINK: return {{"p", d.exponent_p()}};
    case TheoremId::T3:
    case TheoremId::T4:
    case TheoremId::C8:
    case TheoremId::C9: return {{"m1", unit()}, {"m2", unit()}};
    case TheoremId::T5: return {{"p", extremal ? 1.0 : d.exponent_p()}, {"m1", unit()}, {"m2", unit()}};
    case TheoremId::T6: return {{"s1", unit()}, {"s2", unit()}};
    case TheoremId::T7: return {{"s", unit()}, {"alpha", d.weight()}};
    case TheoremId::T8: return {{"alpha", d.weight()}};
    case TheoremId::T9:
    case TheoremId::T10: return {{"alpha1", unit()}, {"m1", unit()}, {"alpha2", unit()}, {"m2", unit()}};
    case TheoremId::C6: return {{"p", extremal ? 1.0 : d.exponent_p()}};
    default: return {};
  }
}

FunctionSpec sample(const std::optional<ClassTag>& tag, double upper, std::uint64_t seed, const SampleOptions& o) {
  return funclib::sample_certified(tag.value_or(ClassTag::convex()), upper, seed, o).spec;
}

}  // namespace

TheoremCase generate_case(TheoremId theorem, Variant variant, std::uint64_t seed, std::size_t case_id,
                          bool extremal) {
  TheoremCase c;
  c.case_id = case_id;
  c.theorem = theorem;
  c.variant = has_printed_variant(theorem) ? variant : Variant::AsDerived;
  c.seed = case_seed(seed, theorem, case_id) ^ (extremal ? 0x5bd1e995ULL : 0ULL);

  Draw d(c.seed);
  c.params = draw_params(theorem, d, extremal);
  c.interval = (extremal && theorem == TheoremId::HHR) ? Interval(0.0, d.uniform(0.1, 3.0))
                                                       : d.interval(needs_positive(theorem));
  const double upper = required_domain(c);
  const auto f_seed = d.next();
  const auto g_seed = d.next();

  if (extremal) {
    const double cf = d.uniform(0.1, 2.0);
    const double cg = d.uniform(0.1, 2.0);
    switch (theorem) {
      case TheoremId::HHL:
      case TheoremId::T7:
        c.f = FunctionSpec::affine(d.uniform(0.0, 2.0), d.uniform(0.0, 2.0), upper);
        c.g = c.f;
        break;
      case TheoremId::HHR:
        c.f = FunctionSpec::power(cf, c.params.at("s"), upper);
        c.g = FunctionSpec::constant(0.0, upper);
        break;
      case TheoremId::MINK:
      case TheoremId::RMINK:
        c.f = sample(std::nullopt, upper, f_seed, {});
        c.g = FunctionSpec::scale(cg, c.f);
        break;
      case TheoremId::T8:
        c.f = FunctionSpec::exponential(cf, d.uniform(-1.0, 1.0), upper);
        c.g = c.f;
        break;
      default:
        c.f = FunctionSpec::constant(cf, upper);
        // equal constants: the exponent-product means collapse only when f = g
        c.g = FunctionSpec::constant(theorem == TheoremId::C4 ? 1.0 : cf, upper);
    }
    return c;
  }

  const Tags tags = required_tags(c);
  SampleOptions opts;
  opts.increasing_only = theorem == TheoremId::C3;
  c.f = sample(tags.f, upper, f_seed, opts);
  switch (theorem) {
    case TheoremId::HHL:
    case TheoremId::HHR:
      c.g = FunctionSpec::constant(0.0, upper);
      break;
    case TheoremId::C4:
      c.g = FunctionSpec::constant(1.0, upper);
      break;
    default:
      c.g = sample(tags.g, upper, g_seed, opts);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

CertifiedFunction certified(const FunctionSpec& spec, const std::optional<ClassTag>& tag, int grid) {
  if (!tag) return {spec, {}, {funclib::Certification::Kind::Constructive, 0}};
  return funclib::certify(spec, {*tag}, spec.domain_upper(), grid);
}

BoundReport dispatch(const TheoremCase& c, const CertifiedFunction& f, const CertifiedFunction& g,
                     const EvalOptions& opts) {
  const auto p = [&](const char* key) { return c.params.at(key); };
  const auto& iv = c.interval;
  using bounds::Corollary;
  const auto corollary = [&](Corollary id) {
    bounds::CorollaryParams cp;
    if (c.params.count("m1")) cp.m1 = p("m1");
    if (c.params.count("m2")) cp.m2 = p("m2");
    if (c.params.count("p")) cp.p = p("p");
    return bounds::corollary_preset(id, f, g, iv, c.variant, cp, opts);
  };
  switch (c.theorem) {
    case TheoremId::HHL: return bounds::hermite_hadamard_s(f, p("s"), iv, opts).left;
    case TheoremId::HHR: return bounds::hermite_hadamard_s(f, p("s"), iv, opts).right;
    case TheoremId::MINK: return bounds::minkowski(f.spec, g.spec, p("p"), iv, opts);
    case TheoremId::RMINK: {
      const auto ratio = bounds::estimate_ratio_bounds(f.spec, g.spec, iv, opts.check_grid);
      return bounds::reverse_minkowski(f.spec, g.spec, p("p"), iv, ratio, opts);
    }
    case TheoremId::T3: return bounds::thm3_exponent_product(f, g, p("m1"), p("m2"), iv, opts);
    case TheoremId::T4: return bounds::thm4_weighted_product(f, g, p("m1"), p("m2"), iv, opts);
    case TheoremId::T5: {
      const auto ratio = bounds::estimate_ratio_bounds(f.spec, g.spec, iv, opts.check_grid);
      return bounds::thm5_minkowski_mconvex(f, g, p("p"), p("m1"), p("m2"), iv, ratio, c.variant, opts);
    }
    case TheoremId::T6: return bounds::thm6_s_exponent_product(f, g, p("s1"), p("s2"), iv, c.variant, opts);
    case TheoremId::T7: return bounds::thm7_s_cauchy_product(f, g, p("s"), p("alpha"), iv, opts);
    case TheoremId::T8: return bounds::thm8_log_cauchy_product(f, g, p("alpha"), iv, opts);
    case TheoremId::T9:
      return bounds::thm9_alpha_m_exponent_product(f, g, p("alpha1"), p("m1"), p("alpha2"), p("m2"), iv, c.variant,
                                                   opts);
    case TheoremId::T10:
      return bounds::thm10_alpha_m_weighted_product(f, g, p("alpha1"), p("m1"), p("alpha2"), p("m2"), iv, c.variant,
                                                    opts);
    case TheoremId::C1: return corollary(Corollary::C1);
    case TheoremId::C2: return corollary(Corollary::C2);
    case TheoremId::C3: return corollary(Corollary::C3);
    case TheoremId::C4: return corollary(Corollary::C4);
    case TheoremId::C5: return corollary(Corollary::C5);
    case TheoremId::C6: return corollary(Corollary::C6);
    case TheoremId::C7: return corollary(Corollary::C7);
    case TheoremId::C8: return corollary(Corollary::C8);
    case TheoremId::C9: return corollary(Corollary::C9);
  }
  throw std::logic_error("unhandled theorem id");
}

}  // namespace

CheckOutcome run_check(const TheoremCase& c, const HarnessOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CheckOutcome out;
  out.case_ = c;
  try {
    const Tags tags = required_tags(c);
    const auto f = certified(c.f, tags.f, opts.certification_grid);
    const auto g = certified(c.g, tags.g, opts.certification_grid);
    out.report = dispatch(c, f, g, opts.eval);
    out.quad_evaluations = out.report.evaluations;
    if (out.report.verdict == Verdict::Violated) {
      auto recheck = dispatch(c, f, g, opts.eval.tightened(opts.recheck_factor));
      out.quad_evaluations += recheck.evaluations;
      if (recheck.verdict != Verdict::Violated) {
        recheck.diagnostic += recheck.diagnostic.empty() ? "" : "; ";
        recheck.diagnostic += "violation not confirmed at tighter quadrature tolerance";
      }
      out.report = std::move(recheck);
    }
  } catch (const HypothesisError& e) {
    out.status = Status::Skipped;
    out.reason = e.what();
  } catch (const DomainError& e) {
    out.status = Status::Skipped;
    out.reason = e.what();
  } catch (const std::exception& e) {
    out.status = Status::Error;
    out.reason = e.what();
  }
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------
// Campaigns

namespace {

struct Job {
  TheoremId theorem;
  Variant variant;
  std::size_t index;  // within its plan entry
};

std::vector<Job> jobs_of(const Plan& plan) {
  std::vector<Job> jobs;
  for (const auto& e : plan.entries) {
    for (std::size_t i = 0; i < e.cases; ++i) jobs.push_back({e.theorem, e.variant, i});
  }
  return jobs;
}

CheckOutcome run_job(const Job& job, std::size_t case_id, std::uint64_t seed, const HarnessOptions& opts) {
  try {
    auto c = generate_case(job.theorem, job.variant, seed, job.index);
    c.case_id = case_id;
    return run_check(c, opts);
  } catch (const std::exception& e) {
    CheckOutcome out;
    out.case_.case_id = case_id;
    out.case_.theorem = job.theorem;
    out.case_.variant = job.variant;
    out.status = Status::Error;
    out.reason = std::string("case generation failed: ") + e.what();
    return out;
  }
}

Report assemble(const Plan& plan, std::vector<CheckOutcome> outcomes, double wall) {
  Report report;
  report.seed = plan.seed;
  report.wall_time_s = wall;
  std::size_t pos = 0;
  for (const auto& e : plan.entries) {
    TheoremSummary s;
    s.theorem = e.theorem;
    s.variant = has_printed_variant(e.theorem) ? e.variant : Variant::AsDerived;
    for (std::size_t i = 0; i < e.cases; ++i, ++pos) {
      const auto& o = outcomes[pos];
      ++s.cases;
      s.quad_evaluations += o.quad_evaluations;
      if (o.status == Status::Skipped) {
        ++s.skips;
        continue;
      }
      if (o.status == Status::Error) {
        ++s.errors;
        continue;
      }
      switch (o.report.verdict) {
        case Verdict::Holds: ++s.holds; break;
        case Verdict::Violated: ++s.violations; break;
        case Verdict::Inconclusive: ++s.inconclusive; continue;
      }
      s.min_slack = s.min_slack ? std::min(*s.min_slack, o.report.slack) : o.report.slack;
    }
    report.total_quad_evaluations += s.quad_evaluations;
    report.summary.push_back(s);
  }
  report.outcomes = std::move(outcomes);
  return report;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Report sweep(const Plan& plan, const HarnessOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto jobs = jobs_of(plan);
  std::vector<CheckOutcome> outcomes(jobs.size());
  const long n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) outcomes[i] = run_job(jobs[i], static_cast<std::size_t>(i), plan.seed, opts);
  return assemble(plan, std::move(outcomes), seconds_since(start));
}

Report sweep_serial(const Plan& plan, const HarnessOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto jobs = jobs_of(plan);
  std::vector<CheckOutcome> outcomes;
  outcomes.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) outcomes.push_back(run_job(jobs[i], i, plan.seed, opts));
  return assemble(plan, std::move(outcomes), seconds_since(start));
}

// ---------------------------------------------------------------------------
// Falsification

namespace {

bool violated(const CheckOutcome& o) { return o.status == Status::Checked && o.report.verdict == Verdict::Violated; }

std::string key_of(const TheoremCase& c) {
  std::ostringstream k;
  k.precision(17);
  k << c.f.to_string() << '|' << c.g.to_string() << '|' << c.interval.a() << ',' << c.interval.b();
  for (const auto& [name, v] : c.params) k << '|' << name << '=' << v;
  return k.str();
}

TheoremCase with_domains(TheoremCase c) {
  const double upper = required_domain(c);
  c.f = c.f.with_domain(upper);
  c.g = c.g.with_domain(upper);
  return c;
}

void set_unit(TheoremCase& c, const std::vector<const char*>& keys) {
  for (const char* k : keys) {
    auto it = c.params.find(k);
    if (it != c.params.end()) it->second = 1.0;
  }
}

const std::vector<const char*> kFParams = {"m1", "s1", "alpha1", "s"};
const std::vector<const char*> kGParams = {"m2", "s2", "alpha2", "s"};

// Simpler neighbours of a function: a constant, single sum terms, the sum
// without one term, an unwrapped scale.
std::vector<FunctionSpec> simpler(const FunctionSpec& f) {
  std::vector<FunctionSpec> out;
  const double upper = f.domain_upper();
  out.push_back(FunctionSpec::constant(1.0, upper));
  const auto kids = f.children();
  if (f.family() == funclib::Family::NonNegSum) {
    for (std::size_t i = 0; i < kids.size(); ++i) {
      out.push_back(kids[i]);
      std::vector<FunctionSpec> rest;
      for (std::size_t j = 0; j < kids.size(); ++j) {
        if (j != i) rest.push_back(kids[j]);
      }
      if (rest.size() > 1) out.push_back(FunctionSpec::sum(rest));
    }
  } else if (f.family() == funclib::Family::Scale) {
    out.push_back(kids.front());
  }
  return out;
}

std::vector<TheoremCase> shrink_candidates(const TheoremCase& c) {
  std::vector<TheoremCase> out;
  const bool uses_g = c.theorem != TheoremId::HHL && c.theorem != TheoremId::HHR;
  {
    auto both = c;
    set_unit(both, kFParams);
    set_unit(both, kGParams);
    both.f = FunctionSpec::constant(1.0, 1.0);
    if (uses_g && c.theorem != TheoremId::C4) both.g = FunctionSpec::constant(1.0, 1.0);
    out.push_back(both);
  }
  for (const auto& s : simpler(c.f)) {
    auto next = c;
    next.f = s;
    out.push_back(next);
    if (s.is_constant()) {
      set_unit(next, kFParams);
      out.push_back(next);
    }
  }
  if (uses_g && c.theorem != TheoremId::C4) {
    for (const auto& s : simpler(c.g)) {
      auto next = c;
      next.g = s;
      out.push_back(next);
      if (s.is_constant()) {
        set_unit(next, kGParams);
        out.push_back(next);
      }
    }
  }
  for (const auto& [name, v] : c.params) {
    if (v != 1.0) {
      auto next = c;
      next.params[name] = 1.0;
      out.push_back(next);
    }
  }
  if (c.interval.length() > 0.05) {
    auto left = c;
    left.interval = Interval(c.interval.a(), c.interval.midpoint());
    out.push_back(left);
    auto right = c;
    right.interval = Interval(c.interval.midpoint(), c.interval.b());
    out.push_back(right);
  }
  for (auto& cand : out) cand = with_domains(cand);
  return out;
}

}  // namespace

Counterexample shrink(const TheoremCase& start, const BoundReport& report, const HarnessOptions& opts) {
  Counterexample cx{start, report.violation, 0, report};
  constexpr int kMaxSteps = 200;
  bool progress = true;
  while (progress && cx.shrink_steps < kMaxSteps) {
    progress = false;
    const auto current = key_of(cx.case_);
    for (const auto& cand : shrink_candidates(cx.case_)) {
      if (key_of(cand) == current) continue;
      const auto outcome = run_check(cand, opts);
      if (violated(outcome)) {
        cx.case_ = cand;
        cx.report = outcome.report;
        cx.violation = outcome.report.violation;
        ++cx.shrink_steps;
        progress = true;
        break;
      }
    }
  }
  return cx;
}

std::optional<Counterexample> falsify(TheoremId theorem, Variant variant, std::size_t budget, std::uint64_t seed,
                                      const HarnessOptions& opts) {
  if (budget == 0) throw std::invalid_argument("falsify: budget must be >= 1");
  constexpr std::size_t kChunk = 64;
  for (std::size_t base = 0; base < budget; base += kChunk) {
    const std::size_t n = std::min(kChunk, budget - base);
    std::vector<CheckOutcome> outcomes(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      outcomes[i] = run_job({theorem, variant, base + i}, base + i, seed, opts);
    }
    for (const auto& o : outcomes) {
      if (!violated(o)) continue;
      auto cx = shrink(o.case_, o.report, opts);
      // The final case must still fail at tighter tolerance.
      HarnessOptions tight = opts;
      tight.eval = opts.eval.tightened(opts.recheck_factor);
      const auto confirm = run_check(cx.case_, tight);
      if (!violated(confirm)) continue;
      cx.report = confirm.report;
      cx.violation = confirm.report.violation;
      return cx;
    }
  }
  return std::nullopt;
}

TightnessStats tightness(TheoremId theorem, Variant variant, std::size_t budget, std::uint64_t seed,
                         const HarnessOptions& opts) {
  if (budget == 0) throw std::invalid_argument("tightness: budget must be >= 1");
  std::vector<CheckOutcome> outcomes(budget);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < static_cast<long>(budget); ++i) {
    const bool extremal = i % 10 == 0;
    try {
      outcomes[i] = run_check(generate_case(theorem, variant, seed, static_cast<std::size_t>(i), extremal), opts);
    } catch (const std::exception& e) {
      outcomes[i].status = Status::Error;
      outcomes[i].reason = e.what();
    }
  }

  TightnessStats stats;
  stats.theorem = theorem;
  stats.variant = has_printed_variant(theorem) ? variant : Variant::AsDerived;
  std::vector<double> slacks;
  for (const auto& o : outcomes) {
    if (o.status != Status::Checked || o.report.verdict == Verdict::Inconclusive) {
      ++stats.skipped;
      continue;
    }
    ++stats.evaluated;
    if (o.report.verdict == Verdict::Violated) ++stats.violations;
    if (slacks.empty() || o.report.slack < stats.min_slack) {
      stats.min_slack = o.report.slack;
      stats.argmin = o.case_;
      stats.argmin_report = o.report;
    }
    slacks.push_back(o.report.slack);
  }
  std::sort(slacks.begin(), slacks.end());
  if (!slacks.empty()) {
    for (double level : {0.0, 0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0}) {
      const auto idx = static_cast<std::size_t>(std::llround(level * static_cast<double>(slacks.size() - 1)));
      stats.quantiles.emplace_back(level, slacks[idx]);
    }
  }
  return stats;
}

}  // namespace ineq::harness
