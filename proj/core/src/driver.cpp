#include "loewner/driver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace loewner {

double reduce_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2π.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

StepDriver::StepDriver(std::vector<double> angles) : angles_(std::move(angles)) {
  if (angles_.empty()) {
    throw std::invalid_argument("step driver needs at least one angle");
  }
  steps_.reserve(angles_.size());
  for (std::size_t k = 0; k < angles_.size(); ++k) {
    if (!std::isfinite(angles_[k])) {
      throw std::invalid_argument("angle " + std::to_string(k + 1) + " is not finite");
    }
    angles_[k] = reduce_angle(angles_[k]);
    steps_.emplace_back(std::cos(angles_[k]), std::sin(angles_[k]));
  }
}

StepDriver make_driver(std::vector<double> angles) { return StepDriver(std::move(angles)); }

StepDriver constant_driver(std::size_t m, double phi) {
  return StepDriver(std::vector<double>(m, phi));
}

Complex eval_driver(const StepDriver& d, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("driver evaluated outside [0,1]");
  }
  const std::size_t m = d.m();
  auto k = static_cast<std::size_t>(std::floor(static_cast<double>(m) * x));
  if (k >= m) k = m - 1;
  return d.steps()[k];
}

StepDriver refine(const StepDriver& d, std::size_t factor) {
  if (factor < 1) {
    throw std::invalid_argument("refinement factor must be at least 1");
  }
  std::vector<double> angles;
  angles.reserve(d.m() * factor);
  for (double phi : d.angles()) {
    angles.insert(angles.end(), factor, phi);
  }
  return StepDriver(std::move(angles));
}

}  // namespace loewner
