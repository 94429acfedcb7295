#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "loewner/driver.hpp"

namespace loewner {

/// Taylor coefficients a2, a3, a4 of f(z) = z + a2 z^2 + a3 z^3 + a4 z^4 + ...
struct CoefficientTriple {
  Complex a2;
  Complex a3;
  Complex a4;

  Complex operator[](std::size_t j) const { return j == 0 ? a2 : (j == 1 ? a3 : a4); }
};

/// Closed-form coefficients of the schlicht function generated by a step
/// driver:
///   a2 = -(2/m) Σ c_k
///   a3 = a2² - Σ (2k-1)/m² c_k²
///   a4 = 3 a2 a3 - 2 a2³ - (2/m³) Σ c_k² (k² c_k + (2k-1) Σ_{j<k} c_j)
/// Runs in O(m).
CoefficientTriple coeffs_234(const StepDriver& d);

/// Partial derivatives ∂a_j/∂φ_k, j = 2,3,4, as three rows of length m.
struct CoeffJacobian {
  std::array<std::vector<Complex>, 3> rows;

  std::size_t m() const { return rows[0].size(); }
  const std::vector<Complex>& d_a2() const { return rows[0]; }
  const std::vector<Complex>& d_a3() const { return rows[1]; }
  const std::vector<Complex>& d_a4() const { return rows[2]; }
};

/// Analytic Jacobian of coeffs_234 with respect to the angles, O(m).
CoeffJacobian grad_coeffs_234(const StepDriver& d);

/// Second derivatives ∂²a_j/∂φ_p∂φ_q, j = 2,3,4, as dense row-major m×m
/// matrices. O(m²).
struct CoeffHessian {
  std::size_t m = 0;
  std::array<std::vector<Complex>, 3> blocks;

  Complex at(std::size_t j, std::size_t p, std::size_t q) const { return blocks[j][p * m + q]; }
};

CoeffHessian hess_coeffs_234(const StepDriver& d);

/// Exact piecewise-polynomial solution of the coefficient recursion
///
///   g_n(x) = -∫_0^x Σ_{k=1}^{n-1} 2k t^{n-k-1} g_k(t) s(t)^{n-k} dt,  g_1 ≡ 1,
///
/// for a step driver s. On each subinterval I_k the driver is constant, so
/// g_n restricted to I_k is a polynomial of degree n-1 which is stored in
/// the monomial basis centered at the left endpoint (k-1)/m.
class PiecewisePolyState {
 public:
  PiecewisePolyState(const StepDriver& d, std::size_t max_order);

  std::size_t m() const { return m_; }
  std::size_t max_order() const { return max_order_; }

  /// Local coefficients of g_n on the 1-based interval k; entry p multiplies
  /// (x - (k-1)/m)^p.
  const std::vector<Complex>& segment(std::size_t n, std::size_t k) const;

  /// g_n(x) for x in [0,1].
  Complex value(std::size_t n, double x) const;

  /// g_n(1) = a_n.
  Complex at_one(std::size_t n) const;

 private:
  Complex eval_segment(std::size_t n, std::size_t k, double u) const;

  std::size_t m_;
  std::size_t max_order_;
  // polys_[n-1][k-1]
  std::vector<std::vector<std::vector<Complex>>> polys_;
};

/// a_2, ..., a_N by exact integration of the recursion. Independent of the
/// closed forms; O(m N^3).
///
/// Throws std::invalid_argument for N < 2 and ResourceLimit for m > 10^6 with
/// N > 8.
std::vector<Complex> coeffs_upto(const StepDriver& d, std::size_t max_order);

}  // namespace loewner
