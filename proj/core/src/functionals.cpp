#include "loewner/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace loewner {

namespace {

// A holomorphic polynomial h(a2, a3, a4) with its complex partials.
struct Holo {
  Complex v;
  std::array<Complex, 3> d;
};

// dF = Re Σ conj(G_j) da_j for F = w·|h|².
void add_abs_sq(CoeffSensitivity& g, const Holo& h, double w) {
  for (std::size_t j = 0; j < 3; ++j) g[j] += 2.0 * w * h.v * std::conj(h.d[j]);
}

// F = w·|h|; zero contribution at h = 0.
void add_abs(CoeffSensitivity& g, const Holo& h, double w) {
  const double r = std::abs(h.v);
  if (r == 0.0) return;
  for (std::size_t j = 0; j < 3; ++j) g[j] += w * h.v * std::conj(h.d[j]) / r;
}

Holo gamma1(const CoefficientTriple& t) { return {0.5 * t.a2, {0.5, 0.0, 0.0}}; }

Holo gamma2(const CoefficientTriple& t) {
  return {0.5 * (t.a3 - 0.5 * t.a2 * t.a2), {-0.5 * t.a2, 0.5, 0.0}};
}

Holo gamma3(const CoefficientTriple& t) {
  const Complex a2 = t.a2, a3 = t.a3, a4 = t.a4;
  return {0.5 * (a4 - a2 * a3 + a2 * a2 * a2 / 3.0),
          {0.5 * (-a3 + a2 * a2), -0.5 * a2, 0.5}};
}

Holo odd5_inner(const CoefficientTriple& t) {
  return {t.a3 - 0.25 * t.a2 * t.a2, {-0.5 * t.a2, 1.0, 0.0}};
}

Holo odd7_inner(const CoefficientTriple& t) {
  const Complex a2 = t.a2, a3 = t.a3, a4 = t.a4;
  return {0.5 * a4 - 0.25 * a3 * a2 + a2 * a2 * a2 / 16.0,
          {-0.25 * a3 + 3.0 / 16.0 * a2 * a2, -0.25 * a2, 0.5}};
}

std::vector<FunctionalSpec> make_builtins() {
  std::vector<FunctionalSpec> out;
  out.emplace_back(
      "milin2",
      [](const CoefficientTriple& t) {
        return std::norm(gamma1(t).v) + 2.0 * std::norm(gamma2(t).v) - 1.5;
      },
      [](const CoefficientTriple& t) {
        CoeffSensitivity g{};
        add_abs_sq(g, gamma1(t), 1.0);
        add_abs_sq(g, gamma2(t), 2.0);
        return g;
      });
  out.emplace_back(
      "milin3",
      [](const CoefficientTriple& t) {
        return std::norm(gamma1(t).v) + 2.0 * std::norm(gamma2(t).v) +
               3.0 * std::norm(gamma3(t).v) - 11.0 / 6.0;
      },
      [](const CoefficientTriple& t) {
        CoeffSensitivity g{};
        add_abs_sq(g, gamma1(t), 1.0);
        add_abs_sq(g, gamma2(t), 2.0);
        add_abs_sq(g, gamma3(t), 3.0);
        return g;
      });
  out.emplace_back(
      "odd5", [](const CoefficientTriple& t) { return 0.5 * std::abs(odd5_inner(t).v); },
      [](const CoefficientTriple& t) {
        CoeffSensitivity g{};
        add_abs(g, odd5_inner(t), 0.5);
        return g;
      });
  out.emplace_back(
      "odd7", [](const CoefficientTriple& t) { return std::abs(odd7_inner(t).v); },
      [](const CoefficientTriple& t) {
        CoeffSensitivity g{};
        add_abs(g, odd7_inner(t), 1.0);
        return g;
      });
  return out;
}

const std::vector<FunctionalSpec>& builtins() {
  static const std::vector<FunctionalSpec> table = make_builtins();
  return table;
}

constexpr std::string_view kBuiltinNames[] = {"milin2", "milin3", "odd5", "odd7"};

}  // namespace

LogCoefficients log_coeffs(const CoefficientTriple& t) {
  return {gamma1(t).v, gamma2(t).v, gamma3(t).v};
}

FunctionalSpec::FunctionalSpec(std::string name, Eval eval, Sensitivity sensitivity)
    : name_(std::move(name)), eval_(std::move(eval)), sensitivity_(std::move(sensitivity)) {
  if (!eval_) throw std::invalid_argument("functional '" + name_ + "' has no evaluator");
}

CoeffSensitivity FunctionalSpec::sensitivity(const CoefficientTriple& t) const {
  if (sensitivity_) return sensitivity_(t);

  CoeffSensitivity g{};
  const double h = kUserGradientStep;
  for (std::size_t j = 0; j < 3; ++j) {
    for (const Complex dir : {Complex{1.0, 0.0}, Complex{0.0, 1.0}}) {
      CoefficientTriple plus = t, minus = t;
      Complex* p = j == 0 ? &plus.a2 : (j == 1 ? &plus.a3 : &plus.a4);
      Complex* q = j == 0 ? &minus.a2 : (j == 1 ? &minus.a3 : &minus.a4);
      *p += h * dir;
      *q -= h * dir;
      // dF = Re(conj(G) da): a real step probes Re G, an imaginary step Im G.
      g[j] += dir * ((eval_(plus) - eval_(minus)) / (2.0 * h));
    }
  }
  return g;
}

std::array<std::array<double, 6>, 6> FunctionalSpec::coefficient_hessian(
    const CoefficientTriple& t) const {
  auto shifted = [&t](std::size_t r, double delta) {
    CoefficientTriple u = t;
    Complex& a = r / 2 == 0 ? u.a2 : (r / 2 == 1 ? u.a3 : u.a4);
    a += r % 2 == 0 ? Complex{delta, 0.0} : Complex{0.0, delta};
    return u;
  };
  auto real_grad = [this](const CoefficientTriple& u) {
    const CoeffSensitivity g = sensitivity(u);
    return std::array<double, 6>{g[0].real(), g[0].imag(), g[1].real(),
                                 g[1].imag(), g[2].real(), g[2].imag()};
  };

  std::array<std::array<double, 6>, 6> h{};
  if (sensitivity_) {
    constexpr double step = 1e-6;
    for (std::size_t r = 0; r < 6; ++r) {
      const auto plus = real_grad(shifted(r, step));
      const auto minus = real_grad(shifted(r, -step));
      for (std::size_t q = 0; q < 6; ++q) h[r][q] = (plus[q] - minus[q]) / (2.0 * step);
    }
  } else {
    constexpr double step = 1e-4;
    const double center = eval_(t);
    for (std::size_t r = 0; r < 6; ++r) {
      h[r][r] = (eval_(shifted(r, step)) - 2.0 * center + eval_(shifted(r, -step))) / (step * step);
      for (std::size_t q = 0; q < r; ++q) {
        auto corner = [&](double sr, double sq) {
          CoefficientTriple u = shifted(r, sr * step);
          Complex& a = q / 2 == 0 ? u.a2 : (q / 2 == 1 ? u.a3 : u.a4);
          a += q % 2 == 0 ? Complex{sq * step, 0.0} : Complex{0.0, sq * step};
          return eval_(u);
        };
        h[r][q] = h[q][r] = (corner(1, 1) - corner(1, -1) - corner(-1, 1) + corner(-1, -1)) / (4.0 * step * step);
      }
    }
  }
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t q = 0; q < r; ++q) h[r][q] = h[q][r] = 0.5 * (h[r][q] + h[q][r]);
  }
  return h;
}

const FunctionalSpec& builtin_functional(std::string_view name) {
  for (const auto& spec : builtins()) {
    if (spec.name() == name) return spec;
  }
  throw std::invalid_argument("unknown functional '" + std::string(name) +
                              "' (expected milin2, milin3, odd5 or odd7)");
}

std::span<const std::string_view> builtin_functional_names() { return kBuiltinNames; }

double eval_functional(const FunctionalSpec& spec, const CoefficientTriple& t) { return spec(t); }

double eval_functional(const FunctionalSpec& spec, const StepDriver& d) {
  return spec(coeffs_234(d));
}

std::vector<double> angle_gradient(const CoeffSensitivity& g, const CoeffJacobian& jac) {
  const std::size_t m = jac.m();
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < 3; ++j) {
    const Complex gj = std::conj(g[j]);
    const auto& row = jac.rows[j];
    for (std::size_t k = 0; k < m; ++k) out[k] += (gj * row[k]).real();
  }
  return out;
}

std::vector<double> grad_functional(const FunctionalSpec& spec, const StepDriver& d) {
  return angle_gradient(spec.sensitivity(coeffs_234(d)), grad_coeffs_234(d));
}

}  // namespace loewner

namespace loewner {

std::vector<double> hess_functional(const FunctionalSpec& spec, const StepDriver& d) {
  const std::size_t m = d.m();
  const CoefficientTriple t = coeffs_234(d);
  const CoeffSensitivity g = spec.sensitivity(t);
  const auto hf = spec.coefficient_hessian(t);
  const CoeffJacobian jac = grad_coeffs_234(d);
  const CoeffHessian hess = hess_coeffs_234(d);

  // real Jacobian rows: Re/Im of ∂a_j/∂φ
  std::array<std::vector<double>, 6> jr;
  for (std::size_t j = 0; j < 3; ++j) {
    jr[2 * j].resize(m);
    jr[2 * j + 1].resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      jr[2 * j][k] = jac.rows[j][k].real();
      jr[2 * j + 1][k] = jac.rows[j][k].imag();
    }
  }
  // hf·jr, 6×m
  std::array<std::vector<double>, 6> hj;
  for (std::size_t r = 0; r < 6; ++r) {
    hj[r].assign(m, 0.0);
    for (std::size_t q = 0; q < 6; ++q) {
      if (hf[r][q] == 0.0) continue;
      for (std::size_t k = 0; k < m; ++k) hj[r][k] += hf[r][q] * jr[q][k];
    }
  }

  std::vector<double> out(m * m, 0.0);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p; q < m; ++q) {
      double v = 0.0;
      for (std::size_t r = 0; r < 6; ++r) v += jr[r][p] * hj[r][q];
      for (std::size_t j = 0; j < 3; ++j) v += (std::conj(g[j]) * hess.at(j, p, q)).real();
      out[p * m + q] = out[q * m + p] = v;
    }
  }
  return out;
}

}  // namespace loewner
