#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ineq/bounds.hpp"
#include "ineq/errors.hpp"
#include "ineq/special.hpp"

using namespace ineq::bounds;
using ineq::funclib::ClassTag;

namespace {

CertifiedFunction cert(FunctionSpec spec, std::vector<ClassTag> tags = {ClassTag::convex()}) {
  return {std::move(spec), std::move(tags), {}};
}

FunctionSpec one(double upper = 10) { return FunctionSpec::constant(1, upper); }
FunctionSpec ident(double upper = 10) { return FunctionSpec::affine(1, 0, upper); }

constexpr double kE = std::numbers::e;

}  // namespace

TEST_CASE("Hermite-Hadamard examples") {
  const auto lin = hermite_hadamard_s(cert(ident()), 1.0, {0, 1});
  CHECK(lin.left.lhs == doctest::Approx(0.5));
  CHECK(lin.left.rhs == doctest::Approx(0.5));
  CHECK(std::abs(lin.left.slack) <= 1e-12);
  CHECK(std::abs(lin.right.slack) <= 1e-12);

  const auto root = hermite_hadamard_s(cert(FunctionSpec::power(1, 0.5, 1), {ClassTag::s_convex(0.5)}), 0.5, {0, 1});
  CHECK(root.right.lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(root.right.rhs == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(root.right.verdict == Verdict::Holds);

  const auto sq = hermite_hadamard_s(cert(FunctionSpec::power(1, 2, 2)), 1.0, {0, 2});
  CHECK(sq.left.lhs == doctest::Approx(1.0));
  CHECK(sq.left.rhs == doctest::Approx(4.0 / 3.0));
  CHECK(sq.right.lhs == doctest::Approx(4.0 / 3.0));
  CHECK(sq.right.rhs == doctest::Approx(2.0));
}

TEST_CASE("Minkowski examples") {
  const auto r = minkowski(ident(), one(), 2.0, {0, 1});
  CHECK(r.lhs == doctest::Approx(std::sqrt(7.0 / 3.0)).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(std::sqrt(1.0 / 3.0) + 1.0).epsilon(1e-12));
  CHECK(r.verdict == Verdict::Holds);
  const auto same = minkowski(ident(), ident(), 3.0, {0.5, 2});
  CHECK(std::abs(same.slack) <= same.tol);
  const auto zero = minkowski(FunctionSpec::constant(0, 10), ident(), 1.5, {0, 1});
  CHECK(std::abs(zero.slack) <= zero.tol);
}

TEST_CASE("reverse Minkowski constant and examples") {
  CHECK(reverse_minkowski_constant({1, 1}) == 1.0);
  CHECK(reverse_minkowski_constant({2, 2}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(reverse_minkowski_constant({1, 2}) == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
  const auto eq = reverse_minkowski(one(), one(), 2.0, {0, 1}, {1, 1});
  CHECK(eq.lhs == doctest::Approx(2.0));
  CHECK(eq.rhs == doctest::Approx(2.0));
  const auto r = reverse_minkowski(FunctionSpec::affine(1, 1, 1), one(1), 1.0, {0, 1}, {1, 2});
  CHECK(r.lhs == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(r.rhs == doctest::Approx(35.0 / 12.0).epsilon(1e-13));
  CHECK(r.verdict == Verdict::Holds);
  CHECK_THROWS(RatioBounds(2, 1));
}

TEST_CASE("ratio bound estimates") {
  const auto same = estimate_ratio_bounds(ident(), ident(), {1, 2});
  CHECK(same.lo == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(same.hi == doctest::Approx(1.0).epsilon(1e-5));
  const auto lin = estimate_ratio_bounds(FunctionSpec::affine(1, 1, 1), one(1), {0, 1});
  CHECK(lin.lo == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(lin.hi == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(lin.lo <= 1.0);
  CHECK(lin.hi >= 2.0);
  const auto three = estimate_ratio_bounds(FunctionSpec::scale(3, ident()), ident(), {1, 2});
  CHECK(three.lo == doctest::Approx(3.0).epsilon(1e-5));
  CHECK_THROWS_AS(estimate_ratio_bounds(one(), ident(), {0, 1}), ineq::HypothesisError);
}

TEST_CASE("thm3 examples") {
  const auto c = thm3_exponent_product(cert(one()), cert(one()), 1, 1, {0.3, 2.2});
  CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(c.rhs == doctest::Approx(1.0).epsilon(1e-15));
  const auto x = thm3_exponent_product(cert(ident()), cert(ident()), 1, 1, {0, 1});
  CHECK(x.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(x.rhs == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(x.verdict == Verdict::Holds);
}

TEST_CASE("thm3 hypothesis and domain checks") {
  // Convex with f(0) > 0 is not 0.5-convex
  CHECK_THROWS_AS(thm3_exponent_product(cert(one()), cert(one()), 0.5, 1, {0, 1}), ineq::HypothesisError);
  const auto small = cert(FunctionSpec::affine(1, 0, 2), {ClassTag::m_convex(0.5)});
  CHECK_THROWS_AS(thm3_exponent_product(small, small, 0.5, 0.5, {1.5, 2}), ineq::DomainError);
}

TEST_CASE("thm4 examples") {
  const auto c = thm4_weighted_product(cert(one()), cert(one()), 1, 1, {0, 1});
  CHECK(c.lhs == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(c.rhs == doctest::Approx(2.0).epsilon(1e-13));
  // exact rational evaluation: equality whenever f or g is affine
  const auto x = thm4_weighted_product(cert(ident()), cert(ident()), 1, 1, {1, 2});
  CHECK(x.rhs == doctest::Approx(14.0 / 3.0).epsilon(1e-13));
  CHECK(std::abs(x.slack) <= x.tol);
  const auto sq = thm4_weighted_product(cert(FunctionSpec::power(1, 2, 1)), cert(FunctionSpec::power(1, 2, 1)), 1, 1,
                                        {0, 1});
  CHECK(sq.slack == doctest::Approx(1.0 / 30.0).epsilon(1e-11));
}

TEST_CASE("thm5: printed sign fails on constants") {
  const auto f = cert(one(1)), g = cert(one(1));
  const auto printed = thm5_minkowski_mconvex(f, g, 1, 1, 1, {0, 1}, {1, 1}, Variant::AsPrinted);
  CHECK(printed.lhs == doctest::Approx(2.0));
  CHECK(printed.rhs == doctest::Approx(0.0));
  CHECK(printed.verdict == Verdict::Violated);
  CHECK(printed.violation == doctest::Approx(2.0));
  const auto derived = thm5_minkowski_mconvex(f, g, 1, 1, 1, {0, 1}, {1, 1}, Variant::AsDerived);
  CHECK(derived.rhs == doctest::Approx(2.0));
  CHECK(std::abs(derived.slack) <= derived.tol);
  const auto lin = cert(FunctionSpec::affine(1, 1, 1));
  const auto p2 = thm5_minkowski_mconvex(lin, g, 2, 1, 1, {0, 1}, {1, 2}, Variant::AsDerived);
  CHECK(p2.verdict == Verdict::Holds);
}

TEST_CASE("thm5: printed root of a negative number is inconclusive") {
  // decreasing f makes B = f(a) + g(a) exceed A = f(b) + g(b)
  const auto f = cert(FunctionSpec::exponential(1, -1, 2)), g = cert(one(2));
  const auto ratio = estimate_ratio_bounds(f.spec, g.spec, {0.5, 2});
  const auto r = thm5_minkowski_mconvex(f, g, 2, 1, 1, {0.5, 2}, ratio, Variant::AsPrinted);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(std::isnan(r.rhs));
}

TEST_CASE("thm6 coefficients and examples") {
  const auto k = thm6_coefficients(1, 1, Variant::AsDerived);
  CHECK(std::abs(k[0] - 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(k[1] - 1.0 / 6.0) <= 1e-12);
  const auto kp = thm6_coefficients(0.4, 0.7, Variant::AsPrinted);
  const auto kd = thm6_coefficients(0.4, 0.7, Variant::AsDerived);
  CHECK(kp[2] == kd[3]);
  CHECK(kp[3] == kd[2]);
  CHECK(kd[2] == doctest::Approx(ineq::special::beta(2, 1.7)));

  const auto c = thm6_s_exponent_product(cert(one()), cert(one()), 1, 1, {0, 3});
  CHECK(c.rhs == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(c.slack) <= c.tol + 1e-15);
  const auto root = thm6_s_exponent_product(cert(FunctionSpec::power(1, 0.5, 1), {ClassTag::s_convex(0.5)}),
                                            cert(one(1)), 0.5, 1, {0, 1});
  CHECK(root.verdict == Verdict::Holds);
  const auto zero = cert(FunctionSpec::constant(0, 1));
  CHECK(thm6_s_exponent_product(zero, zero, 1, 1, {0, 1}).verdict == Verdict::Holds);
}

TEST_CASE("thm6: printed coefficients fail for decreasing functions") {
  const auto f = cert(FunctionSpec::exponential(1, -1, 1));
  const auto printed = thm6_s_exponent_product(f, f, 1, 1, {0, 1}, Variant::AsPrinted);
  CHECK(printed.lhs == doctest::Approx(1 - 1 / kE).epsilon(1e-12));
  CHECK(printed.rhs == doctest::Approx(2.0 / (3 * kE) + 1.0 / 3.0).epsilon(1e-14));
  CHECK(printed.verdict == Verdict::Violated);
  const auto derived = thm6_s_exponent_product(f, f, 1, 1, {0, 1}, Variant::AsDerived);
  CHECK(derived.rhs == doctest::Approx(0.5 / kE + 0.5).epsilon(1e-14));
  CHECK(derived.verdict == Verdict::Holds);
}

TEST_CASE("thm7 examples") {
  const auto x = thm7_s_cauchy_product(cert(ident()), cert(ident()), 1, 0.5, {0, 1});
  CHECK(x.lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(x.rhs == doctest::Approx(0.5));
  CHECK(x.verdict == Verdict::Holds);
  const auto f = cert(FunctionSpec::power(2, 1.5, 3));
  const auto a1 = thm7_s_cauchy_product(f, cert(ident()), 1, 1.0, {0.5, 3});
  const auto hh = hermite_hadamard_s(f, 1, {0.5, 3}).right;
  CHECK(a1.lhs == doctest::Approx(hh.lhs).epsilon(1e-12));
  CHECK(a1.rhs == doctest::Approx(hh.rhs).epsilon(1e-14));
  const auto same = thm7_s_cauchy_product(f, f, 1, 0.3, {0.5, 3});
  CHECK(same.rhs == doctest::Approx(hh.rhs).epsilon(1e-14));
}

TEST_CASE("thm8 examples") {
  const auto lc = [](FunctionSpec s) { return cert(std::move(s), {ClassTag::log_convex()}); };
  const auto c = thm8_log_cauchy_product(lc(FunctionSpec::constant(2.5, 1)), lc(FunctionSpec::constant(2.5, 1)), 0.3,
                                         {0, 1});
  CHECK(c.rhs == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(std::abs(c.slack) <= c.tol + 1e-15);
  const auto e = thm8_log_cauchy_product(lc(FunctionSpec::exponential(1, 1, 1)), lc(one(1)), 1.0, {0, 1});
  CHECK(e.lhs == doctest::Approx(kE - 1).epsilon(1e-13));
  CHECK(e.rhs == doctest::Approx(kE - 1).epsilon(1e-14));
  CHECK(e.verdict == Verdict::Holds);
  const auto two = thm8_log_cauchy_product(lc(FunctionSpec::exponential(1, 1, 1)),
                                           lc(FunctionSpec::exponential(1, 2, 1)), 0.5, {0, 1});
  CHECK(two.lhs == doctest::Approx(2.32112604689204322).epsilon(1e-12));
  CHECK(two.rhs == doctest::Approx(2.45640493896218517).epsilon(1e-13));
  CHECK(two.verdict == Verdict::Holds);
}

TEST_CASE("thm9 coefficients") {
  for (auto v : {Variant::AsPrinted, Variant::AsDerived}) {
    const auto k = thm9_coefficients(1, 1, v);
    CHECK(k[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(k[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(k[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(k[3] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  CHECK(thm9_coefficients(0.5, 1, Variant::AsDerived)[1] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(thm9_coefficients(0.5, 1, Variant::AsPrinted)[1] == doctest::Approx(0.2).epsilon(1e-15));
  const auto am = [](double a, double m) { return cert(one(), {ClassTag::alpha_m_convex(a, m)}); };
  const auto p = thm9_alpha_m_exponent_product(am(0.5, 1), am(1, 1), 0.5, 1, 1, 1, {0, 1}, Variant::AsPrinted);
  const auto d = thm9_alpha_m_exponent_product(am(0.5, 1), am(1, 1), 0.5, 1, 1, 1, {0, 1}, Variant::AsDerived);
  CHECK(p.rhs >= d.rhs);
}

TEST_CASE("thm10: printed denominator fails when alpha1 > alpha2") {
  const auto am = [](double a) { return cert(one(1), {ClassTag::alpha_m_convex(a, 1)}); };
  const auto printed = thm10_alpha_m_weighted_product(am(1), am(0.5), 1, 1, 0.5, 1, {0, 1}, Variant::AsPrinted);
  CHECK(printed.lhs == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(printed.rhs == doctest::Approx(1.93333333333333333).epsilon(1e-13));
  CHECK(printed.verdict == Verdict::Violated);
  const auto derived = thm10_alpha_m_weighted_product(am(1), am(0.5), 1, 1, 0.5, 1, {0, 1}, Variant::AsDerived);
  CHECK(derived.rhs == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(derived.verdict == Verdict::Holds);
  for (double a : {0.2, 0.5, 1.0}) CHECK(thm10_coefficients(a, a, Variant::AsPrinted) == thm10_coefficients(a, a, Variant::AsDerived));
}

TEST_CASE("reductions to thm3 and thm4 at alpha = 1") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  for (int i = 0; i < 30; ++i) {
    const double m1 = u(rng), m2 = u(rng);
    const Interval iv(u(rng), 1.0 + 2 * u(rng));
    const double upper = std::max({iv.b(), iv.a() / m1, iv.a() / m2});
    const auto f = ineq::funclib::sample_certified(ClassTag::m_convex(m1), upper, rng());
    const auto g = ineq::funclib::sample_certified(ClassTag::m_convex(m2), upper, rng());
    const auto t3 = thm3_exponent_product(f, g, m1, m2, iv);
    const auto t9 = thm9_alpha_m_exponent_product(f, g, 1, m1, 1, m2, iv, Variant::AsPrinted);
    CHECK(std::abs(t9.rhs - t3.rhs) <= 1e-13 * std::abs(t3.rhs));
    const auto t4 = thm4_weighted_product(f, g, m1, m2, iv);
    const auto t10 = thm10_alpha_m_weighted_product(f, g, 1, m1, 1, m2, iv, Variant::AsPrinted);
    CHECK(std::abs(t10.rhs - t4.rhs) <= 1e-13 * std::abs(t4.rhs));
  }
}

TEST_CASE("corollary presets") {
  const auto c1 = corollary_preset(Corollary::C1, cert(one()), cert(one()), {0, 1});
  CHECK(std::abs(c1.slack) <= c1.tol + 1e-15);
  const auto c5 = corollary_preset(Corollary::C5, cert(one()), cert(one()), {0, 1}, Variant::AsPrinted);
  CHECK(c5.lhs == doctest::Approx(2.0));
  CHECK(c5.verdict == Verdict::Violated);
  CHECK(c5.violation == doctest::Approx(2.0).epsilon(1e-5));
  const auto c5d = corollary_preset(Corollary::C5, cert(one()), cert(one()), {0, 1}, Variant::AsDerived);
  CHECK(c5d.verdict == Verdict::Holds);
  const auto c2 = corollary_preset(Corollary::C2, cert(ident()), cert(ident()), {0, 1});
  CHECK(c2.verdict == Verdict::Holds);
  const auto c3 = corollary_preset(Corollary::C3, cert(ident()), cert(FunctionSpec::power(1, 2, 10)), {0.5, 2});
  CHECK(c3.verdict == Verdict::Holds);
  CHECK_THROWS_AS(corollary_preset(Corollary::C3, cert(FunctionSpec::exponential(1, -1, 3)), cert(ident()), {0, 1}),
                  ineq::HypothesisError);
  const auto c4 = corollary_preset(Corollary::C4, cert(FunctionSpec::power(1, 2, 10)), cert(one()), {0.5, 2});
  CHECK(std::abs(c4.slack) <= c4.tol);
  CHECK_THROWS_AS(corollary_preset(Corollary::C4, cert(ident()), cert(ident()), {0, 1}), ineq::HypothesisError);
  const auto c7p = corollary_preset(Corollary::C7, cert(FunctionSpec::exponential(1, -1, 1)),
                                    cert(FunctionSpec::exponential(1, -1, 1)), {0, 1}, Variant::AsPrinted);
  CHECK(c7p.verdict == Verdict::Violated);
  CHECK(has_printed_variant(Corollary::C5));
  CHECK_FALSE(has_printed_variant(Corollary::C1));
}
