#pragma once

namespace loewner {

/// A point on the bound curve for |γ1|² + 2|γ2|² over the typically real
/// subclass, parametrized by λ ≥ 0.
struct BoundCurvePoint {
  double lambda = 0.0;
  double F = 0.0;  // 2(λ² e^{-2λ} + ½)² + (λ+1)² e^{-2λ}
  double M = 0.0;  // 2λ⁴ e^{-4λ} + (3λ² + 2λ + 1) e^{-2λ} - 1, equal to F - 3/2
};

/// Throws std::domain_error for λ < 0.
BoundCurvePoint bound_curve(double lambda);

/// g(λ) = 4 e^{-2λ} (λ² - λ³) - 3λ + 1. Satisfies dM/dλ = 2λ e^{-2λ} g(λ).
/// Throws std::domain_error for λ < 0.
double stationarity_residual(double lambda);

/// Bisection for the zero of g on [0, 1] (g(0) = 1, g(1) = -2). Stops once
/// both the bracket width and |g| are at most tol. Requires 0 < tol ≤ 1e-6.
double solve_lambda0(double tol);

struct MilinBound {
  double lambda0 = 0.0;
  double bound = 0.0;
};

/// (λ0, M(λ0)) with λ0 solved to 1e-12.
MilinBound milin_lower_bound();

}  // namespace loewner
