#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace loewner {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Reduces an angle to the canonical range [0, 2π).
double reduce_angle(double phi);

/// Unimodular step function on the equidistant partition of [0,1] into m
/// subintervals I_k = [(k-1)/m, k/m), with the last interval closed.
///
/// The value on I_k is c_k = exp(i φ_k). Angles are stored reduced to
/// [0, 2π). Instances are immutable.
class StepDriver {
 public:
  /// Throws std::invalid_argument on an empty vector or a non-finite angle.
  explicit StepDriver(std::vector<double> angles);

  std::size_t m() const { return angles_.size(); }
  std::span<const double> angles() const { return angles_; }
  std::span<const Complex> steps() const { return steps_; }

  // 1-based, matching c_k.
  Complex step(std::size_t k) const { return steps_.at(k - 1); }

  bool operator==(const StepDriver& other) const { return angles_ == other.angles_; }

 private:
  std::vector<double> angles_;
  std::vector<Complex> steps_;
};

StepDriver make_driver(std::vector<double> angles);

/// Constant driver with every angle equal to phi.
StepDriver constant_driver(std::size_t m, double phi);

/// s(x) = c_{⌊mx⌋+1} for x in [0,1), s(1) = c_m. Throws std::domain_error
/// for x outside [0,1].
Complex eval_driver(const StepDriver& d, double x);

/// Prolongation onto the partition with factor·m subintervals: each angle is
/// repeated `factor` times, so the step function itself is unchanged.
StepDriver refine(const StepDriver& d, std::size_t factor);

}  // namespace loewner
