#include <doctest.h>

#include "ineq/harness.hpp"
#include "ineq/report.hpp"

using namespace ineq::harness;

TEST_CASE("theorem id parsing") {
  CHECK(parse_theorem_ids("T3,thm6, t10") == std::vector<TheoremId>{TheoremId::T3, TheoremId::T6, TheoremId::T10});
  CHECK(parse_theorem_ids("HH") == std::vector<TheoremId>{TheoremId::HHL, TheoremId::HHR});
  CHECK(parse_theorem_ids("hh-right,C5") == std::vector<TheoremId>{TheoremId::HHR, TheoremId::C5});
  CHECK_THROWS_AS(parse_theorem_ids("BOGUS"), std::invalid_argument);
  CHECK_THROWS_AS(parse_theorem_ids("T11"), std::invalid_argument);
  for (auto id : all_theorems()) CHECK(parse_theorem_ids(to_string(id)).front() == id);
  CHECK(parse_variant("as-printed") == Variant::AsPrinted);
  CHECK_THROWS(parse_variant("neither"));
}

TEST_CASE("case generation is deterministic and variant independent") {
  for (auto id : all_theorems()) {
    for (std::size_t i = 0; i < 5; ++i) {
      const auto a = generate_case(id, Variant::AsDerived, 9, i);
      const auto b = generate_case(id, Variant::AsPrinted, 9, i);
      CHECK(a.f == b.f);
      CHECK(a.g == b.g);
      CHECK(a.params == b.params);
      CHECK(a.interval == b.interval);
      CHECK(b.variant == (has_printed_variant(id) ? Variant::AsPrinted : Variant::AsDerived));
    }
  }
}

TEST_CASE("generated cases respect parameter ranges and domains") {
  for (auto id : all_theorems()) {
    for (std::size_t i = 0; i < 20; ++i) {
      const auto c = generate_case(id, Variant::AsDerived, 3, i, i % 4 == 0);
      INFO(to_string(id) << " case " << i);
      for (const auto& [k, v] : c.params) {
        if (k == "p") {
          CHECK(v >= 1.0);
        } else if (k == "alpha") {
          CHECK(v >= 0.0);
          CHECK(v <= 1.0);
        } else {
          CHECK(v > 0.0);
          CHECK(v <= 1.0);
        }
      }
      CHECK(c.f.domain_upper() >= required_domain(c));
      CHECK(c.g.domain_upper() >= required_domain(c));
    }
  }
}

TEST_CASE("run_check examples") {
  TheoremCase c;
  c.theorem = TheoremId::T3;
  c.params = {{"m1", 1.0}, {"m2", 1.0}};
  c.f = FunctionSpec::constant(2, 3);
  c.g = FunctionSpec::constant(2, 3);
  c.interval = Interval(1, 3);
  auto out = run_check(c);
  CHECK(out.status == Status::Checked);
  CHECK(out.report.verdict == Verdict::Holds);
  CHECK(std::abs(out.report.slack) <= out.report.tol);

  c.theorem = TheoremId::C5;
  c.variant = Variant::AsPrinted;
  c.params.clear();
  c.f = c.g = FunctionSpec::constant(1, 1);
  c.interval = Interval(0, 1);
  out = run_check(c);
  CHECK(out.report.verdict == Verdict::Violated);
  CHECK(out.report.violation == doctest::Approx(2.0).epsilon(1e-5));

  c.theorem = TheoremId::T7;
  c.variant = Variant::AsDerived;
  c.params = {{"s", 1.0}, {"alpha", 0.5}};
  c.f = c.g = FunctionSpec::affine(1, 0, 1);
  out = run_check(c);
  CHECK(out.report.verdict == Verdict::Holds);
  CHECK(out.report.slack <= out.report.tol);
  CHECK(out.quad_evaluations > 0);
}

TEST_CASE("run_check skips unmet hypotheses") {
  TheoremCase c;
  c.theorem = TheoremId::T8;
  c.params = {{"alpha", 0.5}};
  c.f = FunctionSpec::affine(1, 0, 1);  // f(0) = 0: not log-convex
  c.g = FunctionSpec::constant(1, 1);
  auto out = run_check(c);
  CHECK(out.status == Status::Skipped);
  CHECK_FALSE(out.reason.empty());

  c.theorem = TheoremId::T3;
  c.params = {{"m1", 0.5}, {"m2", 0.5}};
  c.f = c.g = FunctionSpec::affine(1, 0, 1);
  c.interval = Interval(0.8, 1);  // a / m = 1.6 lies outside the domain
  out = run_check(c);
  CHECK(out.status == Status::Skipped);
}

TEST_CASE("sweep: examples") {
  const auto empty = sweep(Plan{});
  CHECK(empty.outcomes.empty());
  CHECK(empty.violations() == 0);

  const auto t3 = sweep({{{TheoremId::T3, Variant::AsDerived, 100}}, 42});
  REQUIRE(t3.summary.size() == 1);
  CHECK(t3.summary[0].holds == 100);
  CHECK(*t3.summary[0].min_slack >= 0.0);

  const auto c5 = sweep({{{TheoremId::C5, Variant::AsPrinted, 100}}, 42});
  CHECK(c5.summary[0].violations >= 1);
  for (std::size_t i = 0; i < c5.outcomes.size(); ++i) CHECK(c5.outcomes[i].case_.case_id == i);
}

TEST_CASE("sweep matches its serial reference") {
  Plan plan{{{TheoremId::T4, Variant::AsDerived, 15},
             {TheoremId::T6, Variant::AsPrinted, 15},
             {TheoremId::T10, Variant::AsPrinted, 15},
             {TheoremId::C6, Variant::AsDerived, 15}},
            5};
  const auto par = ineq::report::comparison_payload(ineq::report::to_json(sweep(plan)));
  const auto ser = ineq::report::comparison_payload(ineq::report::to_json(sweep_serial(plan)));
  CHECK(par.dump() == ser.dump());
}

TEST_CASE("falsify finds the printed Theorem 5 error and shrinks it to constants") {
  const auto cx = falsify(TheoremId::T5, Variant::AsPrinted, 1000, 77);
  REQUIRE(cx.has_value());
  CHECK(cx->case_.f.is_constant());
  CHECK(cx->case_.g.is_constant());
  CHECK(cx->violation > 0.0);
  const auto again = run_check(cx->case_);
  CHECK(again.report.verdict == Verdict::Violated);
  CHECK(again.report.violation == doctest::Approx(cx->violation).epsilon(1e-6));
}

TEST_CASE("falsify finds nothing for valid statements") {
  CHECK_FALSE(falsify(TheoremId::T3, Variant::AsPrinted, 1000, 1).has_value());
  CHECK_FALSE(falsify(TheoremId::T9, Variant::AsPrinted, 1000, 1).has_value());
  CHECK_THROWS(falsify(TheoremId::T3, Variant::AsDerived, 0, 1));
}

TEST_CASE("shrink keeps every step violated") {
  TheoremCase c = generate_case(TheoremId::C5, Variant::AsPrinted, 4, 0);
  c.f = FunctionSpec::sum({FunctionSpec::affine(0.5, 1, c.f.domain_upper()), FunctionSpec::constant(2, c.f.domain_upper())});
  c.g = FunctionSpec::constant(1, c.f.domain_upper());
  const auto first = run_check(c);
  REQUIRE(first.report.verdict == Verdict::Violated);
  const auto cx = shrink(c, first.report);
  CHECK(cx.shrink_steps >= 1);
  CHECK(cx.case_.f.is_constant());
  CHECK(run_check(cx.case_).report.verdict == Verdict::Violated);
}

TEST_CASE("tightness") {
  const auto hhr = tightness(TheoremId::HHR, Variant::AsDerived, 500, 2);
  CHECK(hhr.violations == 0);
  CHECK(hhr.min_slack <= 1e-8);
  CHECK(hhr.quantiles.size() == 8);
  CHECK(hhr.quantiles.front().second == hhr.min_slack);

  const auto t3 = tightness(TheoremId::T3, Variant::AsDerived, 100, 2);
  CHECK(t3.min_slack <= 1e-8);

  const auto t4 = tightness(TheoremId::T4, Variant::AsDerived, 100, 2);
  REQUIRE(t4.argmin_report.has_value());
  CHECK(t4.min_slack >= -t4.argmin_report->tol);
  CHECK(t4.argmin.has_value());
  CHECK(ineq::report::to_json(t4).contains("argmin"));
}
