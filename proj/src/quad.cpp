#include "ineq/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "ineq/errors.hpp"

namespace ineq::quad {

namespace {

// Abscissae and weights of the 7/15 Gauss-Kronrod pair (QUADPACK qk15).
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for nodes kNodes[1], kNodes[3], kNodes[5], kNodes[7].
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double lo;
  double hi;
  double value;
  double err;
  int depth;
  long order;  // creation order, breaks ties deterministically
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.order > y.order;
  }
};

}  // namespace

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << "interval requires 0 <= a < b < inf, got [" << a << ", " << b << "]";
    throw DomainError(msg.str());
  }
}

QuadratureResult gauss_kronrod_15(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);

  std::array<double, 7> left{};
  std::array<double, 7> right{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    left[j] = f(center - dx);
    right[j] = f(center + dx);
    const double pair = left[j] + right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(left[j]) + std::abs(right[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kKronrodWeights[j] * (std::abs(left[j] - mean) + std::abs(right[j] - mean));
  }

  const double value = kronrod * half;
  const double resabs = abs_sum * std::abs(half);
  const double resasc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
  return {value, err, 15};
}

QuadratureResult integrate(const Integrand& f, const Interval& interval, const QuadOptions& opts) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> work;
  std::vector<Panel> frozen;  // panels at the depth limit

  long order = 0;
  const auto first = gauss_kronrod_15(f, interval.a(), interval.b());
  long evaluations = first.evaluations;
  double total = first.value;
  double total_err = first.err_est;
  work.push({interval.a(), interval.b(), first.value, first.err_est, 0, order++});

  int panels = 1;
  auto converged = [&] { return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  while (!converged()) {
    if (work.empty() || panels >= opts.max_panels) {
      std::ostringstream msg;
      msg << "quadrature on [" << interval.a() << ", " << interval.b() << "] did not converge: err_est "
          << total_err << " after " << panels << " panels";
      throw AccuracyError(msg.str(), total, total_err, evaluations);
    }
    const Panel worst = work.top();
    work.pop();
    if (worst.depth >= opts.max_depth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto lhs = gauss_kronrod_15(f, worst.lo, mid);
    const auto rhs = gauss_kronrod_15(f, mid, worst.hi);
    evaluations += lhs.evaluations + rhs.evaluations;
    ++panels;

    total += (lhs.value + rhs.value) - worst.value;
    total_err += (lhs.err_est + rhs.err_est) - worst.err;
    work.push({worst.lo, mid, lhs.value, lhs.err_est, worst.depth + 1, order++});
    work.push({mid, worst.hi, rhs.value, rhs.err_est, worst.depth + 1, order++});
  }

  // Re-sum from the panels to shed accumulated update rounding.
  std::vector<Panel> all(frozen);
  while (!work.empty()) {
    all.push_back(work.top());
    work.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  double value = 0.0;
  double err = 0.0;
  for (const auto& p : all) {
    value += p.value;
    err += p.err;
  }
  if (!std::isfinite(value)) {
    throw AccuracyError("quadrature produced a non-finite value", value, err, evaluations);
  }
  return {value, err, evaluations};
}

QuadratureResult integrate(const Integrand& f, const Interval& interval, double rel_tol, double abs_tol) {
  QuadOptions opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = abs_tol;
  return integrate(f, interval, opts);
}

}  // namespace ineq::quad
