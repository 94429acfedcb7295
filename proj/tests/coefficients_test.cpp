#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "loewner/coefficients.hpp"
#include "loewner/error.hpp"
#include "loewner/io.hpp"
#include "support/generators.hpp"

namespace loewner {
namespace {

constexpr double kPi = std::numbers::pi;

void expect_close(Complex actual, Complex expected, double tol) {
  EXPECT_LE(std::abs(actual - expected), tol) << actual << " vs " << expected;
}

TEST(Coeffs234, KoebeForAnyM) {
  for (std::size_t m : {1u, 2u, 7u, 50u, 400u}) {
    const CoefficientTriple t = coeffs_234(constant_driver(m, kPi));
    expect_close(t.a2, 2.0, 1e-12);
    expect_close(t.a3, 3.0, 1e-12);
    expect_close(t.a4, 4.0, 1e-12);
  }
}

TEST(Coeffs234, RotatedKoebe) {
  const CoefficientTriple t = coeffs_234(make_driver({kPi / 2}));
  expect_close(t.a2, Complex(0, -2), 1e-14);
  expect_close(t.a3, -3.0, 1e-14);
  expect_close(t.a4, Complex(0, 4), 1e-14);
}

// By hand: c = (1, -1); a2 = 0; a3 = -(1·1 + 3·1)/4 = -1;
// a4 = -(2/8)[1·(1 + 0) + 1·(4·(-1) + 3·1)] = 0.
TEST(Coeffs234, TwoStepDriverByHand) {
  const StepDriver d = make_driver({0.0, kPi});
  const CoefficientTriple t = coeffs_234(d);
  expect_close(t.a2, 0.0, 1e-15);
  expect_close(t.a3, -1.0, 1e-15);
  expect_close(t.a4, 0.0, 1e-15);

  const auto oracle = coeffs_upto(d, 4);
  expect_close(oracle[0], 0.0, 1e-15);
  expect_close(oracle[1], -1.0, 1e-15);
  expect_close(oracle[2], 0.0, 1e-15);
}

TEST(Coeffs234, CounterexampleTriple) {
  const auto a = table2_angles();
  const CoefficientTriple t = coeffs_234(StepDriver(std::vector<double>(a.begin(), a.end())));
  // odd7 inner expression
  const Complex b7 = 0.5 * t.a4 - 0.25 * t.a3 * t.a2 + t.a2 * t.a2 * t.a2 / 16.0;
  EXPECT_NEAR(std::abs(b7), 1.006491, 5e-7);
}

TEST(CoeffsUpto, KoebeAndRotatedKoebe) {
  const auto koebe = coeffs_upto(constant_driver(3, kPi), 6);
  for (std::size_t n = 2; n <= 6; ++n) expect_close(koebe[n - 2], static_cast<double>(n), 1e-12);

  const auto rotated = coeffs_upto(make_driver({kPi / 2}), 5);
  expect_close(rotated[3], 5.0, 1e-12);
}

TEST(CoeffsUpto, ConstantDriversGiveRotatedKoebe) {
  testing::DriverGenerator gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = gen.size(1, 25);
    const double phi = gen.angle();
    const Complex c = std::polar(1.0, phi);
    const auto a = coeffs_upto(constant_driver(m, phi), 8);
    for (std::size_t n = 2; n <= 8; ++n) {
      const Complex expected = static_cast<double>(n) * std::pow(-c, static_cast<int>(n - 1));
      expect_close(a[n - 2], expected, 1e-12);
    }
  }
}

TEST(CoeffsUpto, RejectsLowOrder) {
  EXPECT_THROW(coeffs_upto(constant_driver(2, 0.0), 1), std::invalid_argument);
}

TEST(CoeffsUpto, RejectsHugePartitionAtHighOrder) {
  const StepDriver huge = constant_driver(1'000'001, 0.0);
  EXPECT_THROW(coeffs_upto(huge, 9), ResourceLimit);
}

TEST(CoeffsUpto, MatchesClosedFormsOnRandomDrivers) {
  testing::DriverGenerator gen(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const StepDriver d = gen.driver(1, 50);
    const CoefficientTriple t = coeffs_234(d);
    const auto oracle = coeffs_upto(d, 4);
    EXPECT_LE(std::abs(t.a2 - oracle[0]), 1e-12);
    EXPECT_LE(std::abs(t.a3 - oracle[1]), 1e-12);
    EXPECT_LE(std::abs(t.a4 - oracle[2]), 1e-12);
  }
}

TEST(PiecewisePolyState, ContinuousAndAnchored) {
  testing::DriverGenerator gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const StepDriver d = gen.driver(1, 30);
    const PiecewisePolyState state(d, 6);
    const double h = 1.0 / static_cast<double>(d.m());
    for (std::size_t k = 1; k <= d.m(); ++k) EXPECT_EQ(state.segment(1, k).size(), 1u);
    for (std::size_t n = 2; n <= 6; ++n) {
      EXPECT_EQ(state.value(n, 0.0), Complex{});
      for (std::size_t k = 1; k < d.m(); ++k) {
        // end of segment k versus start of segment k+1
        Complex end{};
        const auto& poly = state.segment(n, k);
        for (std::size_t p = poly.size(); p-- > 0;) end = end * h + poly[p];
        const Complex start = state.segment(n, k + 1)[0];
        EXPECT_LE(std::abs(end - start), 1e-12 * std::max(1.0, std::abs(start)));
        EXPECT_EQ(state.segment(n, k).size(), n);
      }
    }
  }
}

TEST(CoeffsUpto, DeBrangesBounds) {
  testing::DriverGenerator gen(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = coeffs_upto(gen.driver(1, 50), 6);
    for (std::size_t n = 2; n <= 6; ++n) {
      EXPECT_LE(std::abs(a[n - 2]), static_cast<double>(n) + 1e-12);
    }
  }
}

TEST(Coeffs234, RefinementInvariance) {
  testing::DriverGenerator gen(4);
  for (int trial = 0; trial < 200; ++trial) {
    const StepDriver d = gen.driver(1, 40);
    const CoefficientTriple a = coeffs_234(d);
    const CoefficientTriple b = coeffs_234(refine(d, gen.size(2, 5)));
    expect_close(b.a2, a.a2, 1e-12);
    expect_close(b.a3, a.a3, 1e-12);
    expect_close(b.a4, a.a4, 1e-12);
  }
}

TEST(Coeffs234, RotationCovarianceOnConstantDrivers) {
  testing::DriverGenerator gen(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = gen.size(1, 30);
    const double phi = gen.angle();
    const double theta = gen.angle();
    const CoefficientTriple a = coeffs_234(constant_driver(m, phi));
    const CoefficientTriple b = coeffs_234(constant_driver(m, phi + theta));
    for (std::size_t j = 0; j < 3; ++j) {
      expect_close(b[j], a[j] * std::polar(1.0, static_cast<double>(j + 1) * theta), 1e-12);
    }
  }
}

TEST(Coeffs234, ConjugationOfAnglesConjugatesCoefficients) {
  testing::DriverGenerator gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const StepDriver d = gen.driver(1, 40);
    std::vector<double> neg(d.angles().begin(), d.angles().end());
    for (double& x : neg) x = -x;
    const CoefficientTriple a = coeffs_234(d);
    const CoefficientTriple b = coeffs_234(StepDriver(neg));
    for (std::size_t j = 0; j < 3; ++j) {
      expect_close(b[j], std::conj(a[j]), 1e-12);
      EXPECT_NEAR(std::abs(b[j]), std::abs(a[j]), 1e-12);
    }
  }
}

TEST(GradCoeffs234, SingleStepAtZero) {
  const CoeffJacobian jac = grad_coeffs_234(make_driver({0.0}));
  expect_close(jac.d_a2()[0], Complex(0, -2), 1e-15);
}

TEST(GradCoeffs234, RealPartOfA2StationaryAtKoebe) {
  const CoeffJacobian jac = grad_coeffs_234(constant_driver(9, kPi));
  for (const Complex v : jac.d_a2()) EXPECT_NEAR(v.real(), 0.0, 1e-15);
}

TEST(GradCoeffs234, MatchesCentralDifferences) {
  testing::DriverGenerator gen(12);
  constexpr double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const StepDriver d = gen.driver(1, 30);
    const CoeffJacobian jac = grad_coeffs_234(d);
    for (std::size_t k = 0; k < d.m(); ++k) {
      const CoefficientTriple plus = coeffs_234(testing::perturbed(d, k, h));
      const CoefficientTriple minus = coeffs_234(testing::perturbed(d, k, -h));
      double err = 0.0, scale = 0.0;
      for (std::size_t j = 0; j < 3; ++j) {
        const Complex fd = (plus[j] - minus[j]) / (2.0 * h);
        err = std::max(err, std::abs(jac.rows[j][k] - fd));
        scale = std::max(scale, std::abs(jac.rows[j][k]));
      }
      EXPECT_LE(err, 1e-6 * scale) << "column " << k;
    }
  }
}

TEST(HessCoeffs234, MatchesDifferencesOfJacobian) {
  testing::DriverGenerator gen(13);
  constexpr double h = 1e-6;
  for (int trial = 0; trial < 30; ++trial) {
    const StepDriver d = gen.driver(1, 15);
    const CoeffHessian hess = hess_coeffs_234(d);
    for (std::size_t q = 0; q < d.m(); ++q) {
      const CoeffJacobian plus = grad_coeffs_234(testing::perturbed(d, q, h));
      const CoeffJacobian minus = grad_coeffs_234(testing::perturbed(d, q, -h));
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t p = 0; p < d.m(); ++p) {
          const Complex fd = (plus.rows[j][p] - minus.rows[j][p]) / (2.0 * h);
          EXPECT_LE(std::abs(hess.at(j, p, q) - fd), 1e-6 * std::max(1.0, std::abs(fd)));
        }
      }
    }
  }
}

}  // namespace
}  // namespace loewner
