#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ineq/bounds.hpp"
#include "ineq/funclib.hpp"
#include "ineq/quad.hpp"

namespace ineq::harness {

using bounds::BoundReport;
using bounds::Variant;
using bounds::Verdict;
using funclib::FunctionSpec;
using quad::Interval;

// HH is split into its two inequalities so every outcome carries one report.
enum class TheoremId { HHL, HHR, MINK, RMINK, T3, T4, T5, T6, T7, T8, T9, T10, C1, C2, C3, C4, C5, C6, C7, C8, C9 };

std::string to_string(TheoremId id);
const std::vector<TheoremId>& all_theorems();

/// Accepts canonical ids (T3, C5, HHR, ...), thm3 / t3 spellings,
/// HH-left / HH-right, and "HH" for both sides. Throws std::invalid_argument
/// for unknown ids.
std::vector<TheoremId> parse_theorem_ids(const std::string& text);

/// Theorems whose printed and derived forms differ.
bool has_printed_variant(TheoremId id);

Variant parse_variant(const std::string& text);

struct TheoremCase {
  std::size_t case_id = 0;
  TheoremId theorem = TheoremId::T3;
  Variant variant = Variant::AsDerived;
  std::map<std::string, double> params;
  FunctionSpec f;
  FunctionSpec g;
  Interval interval;
  std::uint64_t seed = 0;
};

/// Smallest domain_upper the case's functions need: max(b, a/m1, a/m2).
double required_domain(const TheoremCase& c);

enum class Status { Checked, Skipped, Error };
std::string to_string(Status s);

struct CheckOutcome {
  TheoremCase case_;
  Status status = Status::Checked;
  BoundReport report;
  std::string reason;  // why a case was skipped or errored
  double wall_time_s = 0.0;
  long quad_evaluations = 0;
};

struct HarnessOptions {
  bounds::EvalOptions eval;
  int certification_grid = 25;
  /// Violations are confirmed at tolerances tightened by this factor.
  double recheck_factor = 10.0;
};

/// Deterministic case from (seed, theorem, case_id). The variant does not
/// influence the draw, so printed and derived runs see identical cases.
/// `extremal` draws from the theorem's known equality family instead
/// (constants with unit parameters, x^s on [0, b], proportional pairs).
TheoremCase generate_case(TheoremId theorem, Variant variant, std::uint64_t seed, std::size_t case_id,
                          bool extremal = false);

/// Certifies the hypotheses with check_class, then dispatches to the
/// matching evaluator. Unmet hypotheses give Status::Skipped; a violation
/// is re-evaluated at tighter quadrature tolerance before it is reported.
CheckOutcome run_check(const TheoremCase& c, const HarnessOptions& opts = {});

struct PlanEntry {
  TheoremId theorem;
  Variant variant;
  std::size_t cases;
};

struct Plan {
  std::vector<PlanEntry> entries;
  std::uint64_t seed = 0;
};

struct TheoremSummary {
  TheoremId theorem = TheoremId::T3;
  Variant variant = Variant::AsDerived;
  std::size_t cases = 0;
  std::size_t holds = 0;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  std::size_t skips = 0;
  std::size_t errors = 0;
  std::optional<double> min_slack;
  long quad_evaluations = 0;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<CheckOutcome> outcomes;  // in case_id order
  std::vector<TheoremSummary> summary;
  long total_quad_evaluations = 0;
  double wall_time_s = 0.0;

  std::size_t violations() const;
};

/// Runs every planned case; OpenMP-parallel over cases. Outcomes are
/// stored by case id, so the report does not depend on completion order.
Report sweep(const Plan& plan, const HarnessOptions& opts = {});

/// Serial reference for sweep.
Report sweep_serial(const Plan& plan, const HarnessOptions& opts = {});

struct Counterexample {
  TheoremCase case_;
  double violation = 0.0;
  int shrink_steps = 0;
  BoundReport report;
};

/// Searches `budget` random cases for a confirmed violation, then shrinks
/// the first one found (constants first, then parameters toward their
/// range ends, then interval halving) while the violation persists.
std::optional<Counterexample> falsify(TheoremId theorem, Variant variant, std::size_t budget, std::uint64_t seed,
                                      const HarnessOptions& opts = {});

/// Shrinks a violating case; each accepted step stays violated.
Counterexample shrink(const TheoremCase& start, const BoundReport& report, const HarnessOptions& opts = {});

struct TightnessStats {
  TheoremId theorem = TheoremId::T3;
  Variant variant = Variant::AsDerived;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
  std::optional<TheoremCase> argmin;
  std::optional<BoundReport> argmin_report;
  std::vector<std::pair<double, double>> quantiles;  // (level, slack)
};

/// Slack distribution over `budget` cases; every tenth case comes from the
/// theorem's extremal family.
TightnessStats tightness(TheoremId theorem, Variant variant, std::size_t budget, std::uint64_t seed,
                         const HarnessOptions& opts = {});

}  // namespace ineq::harness
