#include "loewner/milin_bound.hpp"

#include <cmath>
#include <stdexcept>

namespace loewner {

namespace {

constexpr double kBracketLow = 0.0;
constexpr double kBracketHigh = 1.0;

void require_nonnegative(double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("lambda must be nonnegative");
}

}  // namespace

BoundCurvePoint bound_curve(double lambda) {
  require_nonnegative(lambda);
  const double e2 = std::exp(-2.0 * lambda);
  const double l2 = lambda * lambda;
  const double inner = l2 * e2 + 0.5;
  BoundCurvePoint p;
  p.lambda = lambda;
  p.F = 2.0 * inner * inner + (lambda + 1.0) * (lambda + 1.0) * e2;
  p.M = 2.0 * l2 * l2 * e2 * e2 + (3.0 * l2 + 2.0 * lambda + 1.0) * e2 - 1.0;
  return p;
}

double stationarity_residual(double lambda) {
  require_nonnegative(lambda);
  const double l2 = lambda * lambda;
  return 4.0 * std::exp(-2.0 * lambda) * (l2 - l2 * lambda) - 3.0 * lambda + 1.0;
}

double solve_lambda0(double tol) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("tol must lie in (0, 1e-6]");

  double lo = kBracketLow, hi = kBracketHigh;
  double g_lo = stationarity_residual(lo);
  const double g_hi = stationarity_residual(hi);
  if (!(g_lo > 0.0 && g_hi < 0.0)) {
    throw std::logic_error("stationarity residual does not change sign on [0, 1]");
  }

  while (true) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = stationarity_residual(mid);
    if (mid <= lo || mid >= hi || g_mid == 0.0) return mid;
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
    const double root = 0.5 * (lo + hi);
    if (hi - lo <= tol && std::abs(stationarity_residual(root)) <= tol) return root;
  }
}

MilinBound milin_lower_bound() {
  const double lambda0 = solve_lambda0(1e-12);
  return {lambda0, bound_curve(lambda0).M};
}

}  // namespace loewner
