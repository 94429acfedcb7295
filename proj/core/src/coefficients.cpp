#include "loewner/coefficients.hpp"

#include <cmath>
#include <stdexcept>

#include "loewner/error.hpp"

namespace loewner {

namespace {

constexpr Complex kI{0.0, 1.0};

constexpr std::size_t kMaxSegmentsForHighOrder = 1'000'000;
constexpr std::size_t kHighOrder = 8;

}  // namespace

CoefficientTriple coeffs_234(const StepDriver& d) {
  const auto c = d.steps();
  const double m = static_cast<double>(d.m());

  Complex sum{};
  Complex weighted_sq{};
  Complex cubic_part{};
  Complex prefix{};  // Σ_{j<k} c_j, with c_0 = 0
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    const double k = static_cast<double>(idx + 1);
    const Complex ck = c[idx];
    const Complex ck2 = ck * ck;
    sum += ck;
    weighted_sq += (2.0 * k - 1.0) * ck2;
    cubic_part += ck2 * (k * k * ck + (2.0 * k - 1.0) * prefix);
    prefix += ck;
  }

  CoefficientTriple t;
  t.a2 = -2.0 / m * sum;
  t.a3 = t.a2 * t.a2 - weighted_sq / (m * m);
  t.a4 = 3.0 * t.a2 * t.a3 - 2.0 * t.a2 * t.a2 * t.a2 - 2.0 / (m * m * m) * cubic_part;
  return t;
}

CoeffJacobian grad_coeffs_234(const StepDriver& d) {
  const auto c = d.steps();
  const std::size_t n = c.size();
  const double m = static_cast<double>(n);
  const CoefficientTriple t = coeffs_234(d);

  // suffix[idx] = Σ_{k > idx+1} (2k-1) c_k²
  std::vector<Complex> suffix(n, Complex{});
  for (std::size_t idx = n; idx-- > 1;) {
    const double k = static_cast<double>(idx + 1);
    suffix[idx - 1] = suffix[idx] + (2.0 * k - 1.0) * c[idx] * c[idx];
  }

  CoeffJacobian jac;
  for (auto& row : jac.rows) row.resize(n);

  Complex prefix{};
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double k = static_cast<double>(idx + 1);
    const Complex ck = c[idx];
    const Complex ck2 = ck * ck;

    const Complex da2 = -2.0 / m * kI * ck;
    const Complex da3 = 2.0 * t.a2 * da2 - (2.0 * k - 1.0) / (m * m) * 2.0 * kI * ck2;
    // derivative of Σ c_k² (k² c_k + (2k-1) P_{k-1}) with respect to φ_k
    const Complex dcubic = 3.0 * kI * k * k * ck2 * ck +
                           2.0 * kI * (2.0 * k - 1.0) * ck2 * prefix + kI * ck * suffix[idx];
    const Complex da4 = 3.0 * (da2 * t.a3 + t.a2 * da3) - 6.0 * t.a2 * t.a2 * da2 -
                        2.0 / (m * m * m) * dcubic;

    jac.rows[0][idx] = da2;
    jac.rows[1][idx] = da3;
    jac.rows[2][idx] = da4;
    prefix += ck;
  }
  return jac;
}

CoeffHessian hess_coeffs_234(const StepDriver& d) {
  const auto c = d.steps();
  const std::size_t n = c.size();
  const double m = static_cast<double>(n);
  const CoefficientTriple t = coeffs_234(d);
  const CoeffJacobian jac = grad_coeffs_234(d);
  const auto& da2 = jac.d_a2();
  const auto& da3 = jac.d_a3();

  CoeffHessian hess;
  hess.m = n;
  for (auto& b : hess.blocks) b.assign(n * n, Complex{});
  auto& h2 = hess.blocks[0];
  auto& h3 = hess.blocks[1];
  auto& h4 = hess.blocks[2];

  // Diagonal pieces of a2 and of the explicit sums in a3 and a4 (the cubic
  // sum T = Σ k² c_k³ + Σ_{j<k} (2k-1) c_k² c_j).
  std::vector<Complex> d2a2(n), d2sq(n), d2cubic_diag(n);
  std::vector<Complex> suffix(n, Complex{});
  for (std::size_t idx = n; idx-- > 1;) {
    const double k = static_cast<double>(idx + 1);
    suffix[idx - 1] = suffix[idx] + (2.0 * k - 1.0) * c[idx] * c[idx];
  }
  Complex prefix{};
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double k = static_cast<double>(idx + 1);
    const Complex ck = c[idx];
    const Complex ck2 = ck * ck;
    d2a2[idx] = 2.0 / m * ck;
    d2sq[idx] = 4.0 * (2.0 * k - 1.0) / (m * m) * ck2;  // ∂² of -Σ w_k c_k²
    d2cubic_diag[idx] = -9.0 * k * k * ck2 * ck - 4.0 * (2.0 * k - 1.0) * ck2 * prefix - ck * suffix[idx];
    prefix += ck;
  }

  const double cubic_scale = -2.0 / (m * m * m);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p; q < n; ++q) {
      const bool diag = p == q;
      const Complex h2pq = diag ? d2a2[p] : Complex{};
      Complex h3pq = 2.0 * da2[p] * da2[q] + 2.0 * t.a2 * h2pq;
      if (diag) h3pq += d2sq[p];
      Complex cubic = diag ? d2cubic_diag[p]
                           : -2.0 * (2.0 * static_cast<double>(q + 1) - 1.0) * c[q] * c[q] * c[p];
      const Complex h4pq = 3.0 * (h2pq * t.a3 + da2[p] * da3[q] + da3[p] * da2[q] + t.a2 * h3pq) -
                           6.0 * (2.0 * t.a2 * da2[p] * da2[q] + t.a2 * t.a2 * h2pq) +
                           cubic_scale * cubic;
      h2[p * n + q] = h2[q * n + p] = h2pq;
      h3[p * n + q] = h3[q * n + p] = h3pq;
      h4[p * n + q] = h4[q * n + p] = h4pq;
    }
  }
  return hess;
}

PiecewisePolyState::PiecewisePolyState(const StepDriver& d, std::size_t max_order)
    : m_(d.m()), max_order_(max_order) {
  if (max_order < 1) {
    throw std::invalid_argument("max order must be at least 1");
  }
  const double h = 1.0 / static_cast<double>(m_);
  const auto c = d.steps();

  // binom[p][q] = C(p, q)
  std::vector<std::vector<double>> binom(max_order + 1);
  for (std::size_t p = 0; p <= max_order; ++p) {
    binom[p].assign(p + 1, 1.0);
    for (std::size_t q = 1; q < p; ++q) binom[p][q] = binom[p - 1][q - 1] + binom[p - 1][q];
  }

  polys_.assign(max_order, std::vector<std::vector<Complex>>(m_));
  for (std::size_t k = 0; k < m_; ++k) polys_[0][k] = {Complex{1.0, 0.0}};

  std::vector<double> left_pow(max_order + 1);
  std::vector<Complex> c_pow(max_order + 1);
  std::vector<Complex> integrand;
  for (std::size_t k = 0; k < m_; ++k) {
    const double left = static_cast<double>(k) * h;
    left_pow[0] = 1.0;
    c_pow[0] = 1.0;
    for (std::size_t p = 1; p <= max_order; ++p) {
      left_pow[p] = left_pow[p - 1] * left;
      c_pow[p] = c_pow[p - 1] * c[k];
    }

    for (std::size_t n = 2; n <= max_order; ++n) {
      // Integrand Σ_j 2j t^{n-j-1} g_j(t) c^{n-j} in powers of u = t - left.
      integrand.assign(n - 1, Complex{});
      for (std::size_t j = 1; j < n; ++j) {
        const std::size_t tp = n - j - 1;
        const Complex scale = 2.0 * static_cast<double>(j) * c_pow[n - j];
        const auto& gj = polys_[j - 1][k];
        for (std::size_t q = 0; q <= tp; ++q) {
          // t^tp = Σ_q C(tp,q) left^{tp-q} u^q
          const Complex factor = scale * binom[tp][q] * left_pow[tp - q];
          for (std::size_t r = 0; r < gj.size(); ++r) integrand[q + r] += factor * gj[r];
        }
      }

      const Complex start = k == 0 ? Complex{} : eval_segment(n, k - 1, h);
      auto& poly = polys_[n - 1][k];
      poly.assign(n, Complex{});
      poly[0] = start;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        poly[p + 1] = -integrand[p] / static_cast<double>(p + 1);
      }
    }
  }
}

Complex PiecewisePolyState::eval_segment(std::size_t n, std::size_t k, double u) const {
  const auto& poly = polys_[n - 1][k];
  Complex acc{};
  for (std::size_t p = poly.size(); p-- > 0;) acc = acc * u + poly[p];
  return acc;
}

const std::vector<Complex>& PiecewisePolyState::segment(std::size_t n, std::size_t k) const {
  if (n < 1 || n > max_order_ || k < 1 || k > m_) {
    throw std::out_of_range("segment index out of range");
  }
  return polys_[n - 1][k - 1];
}

Complex PiecewisePolyState::value(std::size_t n, double x) const {
  if (n < 1 || n > max_order_) throw std::out_of_range("order out of range");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("x outside [0,1]");
  auto k = static_cast<std::size_t>(std::floor(static_cast<double>(m_) * x));
  if (k >= m_) k = m_ - 1;
  const double u = x - static_cast<double>(k) / static_cast<double>(m_);
  return eval_segment(n, k, u);
}

Complex PiecewisePolyState::at_one(std::size_t n) const {
  if (n < 1 || n > max_order_) throw std::out_of_range("order out of range");
  return eval_segment(n, m_ - 1, 1.0 / static_cast<double>(m_));
}

std::vector<Complex> coeffs_upto(const StepDriver& d, std::size_t max_order) {
  if (max_order < 2) {
    throw std::invalid_argument("coeffs_upto needs N >= 2");
  }
  if (d.m() > kMaxSegmentsForHighOrder && max_order > kHighOrder) {
    throw ResourceLimit("coeffs_upto: m > 10^6 with N > 8 is rejected");
  }
  const PiecewisePolyState state(d, max_order);
  std::vector<Complex> out;
  out.reserve(max_order - 1);
  for (std::size_t n = 2; n <= max_order; ++n) out.push_back(state.at_one(n));
  return out;
}

}  // namespace loewner
