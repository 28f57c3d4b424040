#include <doctest.h>

#include <cmath>
#include <random>

#include "ineq/errors.hpp"
#include "ineq/quad.hpp"

using namespace ineq::quad;

TEST_CASE("interval validation") {
  CHECK(Interval().a() == 0.0);
  CHECK(Interval().b() == 1.0);
  CHECK_THROWS_AS(Interval(1.0, 1.0), ineq::DomainError);
  CHECK_THROWS_AS(Interval(-1.0, 1.0), ineq::DomainError);
  CHECK_THROWS_AS(Interval(0.0, INFINITY), ineq::DomainError);
  CHECK_THROWS_AS(Interval(0.0, NAN), ineq::DomainError);
}

TEST_CASE("gauss_kronrod_15 is exact for low-degree polynomials") {
  for (int k = 0; k <= 20; ++k) {
    const auto r = gauss_kronrod_15([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
  const auto r = gauss_kronrod_15([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.evaluations == 15);
}

TEST_CASE("integrate: examples") {
  const auto sq = integrate([](double x) { return x * x; }, {0.0, 1.0}, 1e-12, 1e-12);
  CHECK(sq.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(sq.err_est <= 1e-12);

  // sum (-1)^(n+1) n^-n; mpmath agrees with a direct quadrature
  const auto xx = integrate([](double x) { return std::pow(x, x); }, {0.0, 1.0});
  CHECK(std::abs(xx.value - 0.78343051071213440706) <= std::max(xx.err_est, 1e-15));
  CHECK(xx.err_est <= 1e-10);

  const auto c = integrate([](double) { return 2.5; }, {1.0, 4.0});
  CHECK(c.value == doctest::Approx(7.5).epsilon(1e-15));
}

TEST_CASE("integrate: endpoint singularity without touching the endpoints") {
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, {0.0, 1.0}, 1e-8, 0.0);
  CHECK(std::abs(r.value - 2.0) <= std::max(r.err_est, 1e-8));
}

TEST_CASE("integrate: linearity on random polynomial pairs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> c(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const double p0 = c(rng), p1 = c(rng), p2 = c(rng), q0 = c(rng), q3 = c(rng), al = c(rng), be = c(rng);
    auto p = [&](double x) { return p0 + p1 * x + p2 * x * x; };
    auto q = [&](double x) { return q0 + q3 * x * x * x + std::exp(x); };
    const Interval iv(0.5, 2.0);
    const auto rp = integrate(p, iv), rq = integrate(q, iv);
    const auto rs = integrate([&](double x) { return al * p(x) + be * q(x); }, iv);
    const double combined = std::abs(al) * rp.err_est + std::abs(be) * rq.err_est + rs.err_est;
    CHECK(std::abs(rs.value - (al * rp.value + be * rq.value)) <= combined + 1e-14 * std::abs(rs.value));
  }
}

TEST_CASE("integrate: deterministic and monotone in tolerance") {
  auto f = [](double x) { return std::sin(10 * x) * std::exp(-x); };
  const auto a = integrate(f, {0.0, 3.0});
  const auto b = integrate(f, {0.0, 3.0});
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
  const auto tight = integrate(f, {0.0, 3.0}, QuadOptions{}.tightened(100));
  CHECK(tight.evaluations >= a.evaluations);
}

TEST_CASE("integrate: budget exhaustion reports the best estimate") {
  QuadOptions o;
  o.rel_tol = 1e-15;
  o.abs_tol = 0.0;
  o.max_panels = 3;
  try {
    integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, {0.0, 1.0}, o);
    FAIL("expected AccuracyError");
  } catch (const ineq::AccuracyError& e) {
    CHECK(std::isfinite(e.best_value()));
    CHECK(e.err_est() > 0.0);
    CHECK(e.evaluations() > 0);
  }
}
