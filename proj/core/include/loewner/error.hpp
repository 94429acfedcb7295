#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

// Raised when an objective or coefficient evaluation produces NaN/Inf.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a request would allocate an unreasonable amount of state.
class ResourceLimit : public std::length_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::length_error(what) {}
};

}  // namespace loewner
