#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/coefficients.hpp"

namespace loewner {

/// Logarithmic coefficients: log(f(z)/z) = 2 Σ γ_n z^n.
struct LogCoefficients {
  Complex gamma1;
  Complex gamma2;
  Complex gamma3;
};

LogCoefficients log_coeffs(const CoefficientTriple& t);

/// Sensitivity of a real objective F to the complex coefficients, in the
/// form dF = Re Σ_j conj(G_j) da_j.
using CoeffSensitivity = std::array<Complex, 3>;

/// A real-valued objective Re Φ(a2, a3, a4).
///
/// Built-in objectives carry an analytic coefficient sensitivity. User
/// objectives supply only `eval`; their sensitivity is taken by central
/// differences on the six real coefficient components.
class FunctionalSpec {
 public:
  using Eval = std::function<double(const CoefficientTriple&)>;
  using Sensitivity = std::function<CoeffSensitivity(const CoefficientTriple&)>;

  FunctionalSpec(std::string name, Eval eval, Sensitivity sensitivity = {});

  const std::string& name() const { return name_; }
  bool has_analytic_sensitivity() const { return static_cast<bool>(sensitivity_); }

  double operator()(const CoefficientTriple& t) const { return eval_(t); }
  CoeffSensitivity sensitivity(const CoefficientTriple& t) const;

  /// Real 6×6 Hessian in (Re a2, Im a2, Re a3, Im a3, Re a4, Im a4), by
  /// central differences of the sensitivity (or of eval for user objectives).
  std::array<std::array<double, 6>, 6> coefficient_hessian(const CoefficientTriple& t) const;

 private:
  std::string name_;
  Eval eval_;
  Sensitivity sensitivity_;
};

/// Step used by the finite-difference sensitivity of user objectives.
inline constexpr double kUserGradientStep = 1e-6;

/// Built-in names: milin2, milin3, odd5, odd7.
///   milin2 = |γ1|² + 2|γ2|² - 3/2
///   milin3 = |γ1|² + 2|γ2|² + 3|γ3|² - 11/6
///   odd5   = ½ |a3 - ¼ a2²|
///   odd7   = |½ a4 - ¼ a3 a2 + (1/16) a2³|
/// Throws std::invalid_argument for any other name.
const FunctionalSpec& builtin_functional(std::string_view name);

std::span<const std::string_view> builtin_functional_names();

double eval_functional(const FunctionalSpec& spec, const CoefficientTriple& t);

/// Objective value at the triple generated by d.
double eval_functional(const FunctionalSpec& spec, const StepDriver& d);

/// Gradient of the objective with respect to the driver's angles. A modulus
/// term evaluated at zero contributes zero.
std::vector<double> grad_functional(const FunctionalSpec& spec, const StepDriver& d);

/// Hessian of the objective with respect to the angles, row-major m×m.
std::vector<double> hess_functional(const FunctionalSpec& spec, const StepDriver& d);

/// Chain rule from a coefficient sensitivity through the Jacobian.
std::vector<double> angle_gradient(const CoeffSensitivity& g, const CoeffJacobian& jac);

}  // namespace loewner
