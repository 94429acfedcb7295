#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "loewner/functionals.hpp"

namespace loewner {

struct AscentOptions {
  double grad_tol = 1e-10;   // stop when the gradient sup-norm drops below this
  int max_iters = 10000;     // per local ascent; 0 only evaluates the start
  int restarts = 64;         // random starts in the first stage
  int refine_restarts = 8;   // fresh random starts in each later stage
  // Fraction of random starts drawn as perturbed constant drivers
  // θ + spread·N(0,1) instead of uniformly on the torus.
  double near_constant_fraction = 0.5;
  double near_constant_spread = 0.5;
  std::uint64_t seed = 0;
  unsigned workers = 1;      // restart threads; 0 picks hardware concurrency
};

/// Throws std::invalid_argument when an option is out of range.
void validate(const AscentOptions& opts);

struct OptimizationResult {
  StepDriver driver;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct RefinementStage {
  std::size_t m = 0;
  OptimizationResult result;
};

struct RefinementTrace {
  std::vector<RefinementStage> stages;

  const OptimizationResult& final_result() const { return stages.back().result; }
};

/// Monotone damped Newton ascent on the torus [0, 2π)^m starting from d0.
///
/// Steps use the exact angle Hessian with eigenvalues replaced by their
/// magnitudes plus an adaptive damping term. Every accepted step satisfies
/// an Armijo sufficient-increase test, so the objective never decreases. Throws NumericalFailure if the objective turns
/// non-finite.
OptimizationResult local_maximize(const FunctionalSpec& spec, const StepDriver& d0,
                                  const AscentOptions& opts);

/// Uniform i.i.d. angles on [0, 2π) for start `index` of stream `stream`.
/// Depends only on (seed, stream, index).
std::vector<double> random_angles(std::size_t m, std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t index);

/// Angles θ + spread·z_k with θ uniform on [0, 2π) and z_k standard normal.
std::vector<double> near_constant_angles(std::size_t m, double spread, std::uint64_t seed,
                                         std::uint64_t stream, std::uint64_t index);

/// Start `index` of a stage's random family: the first
/// round(near_constant_fraction·count) are near-constant, the rest uniform.
std::vector<double> random_start(std::size_t m, const AscentOptions& opts, std::uint64_t stream,
                                 std::uint64_t index, std::uint64_t count);

/// Best local maximum over the all-π start, the all-0 start, and
/// `opts.restarts` random starts, in that order. Ties keep the earliest.
OptimizationResult multi_start(const FunctionalSpec& spec, std::size_t m,
                               const AscentOptions& opts);

/// Successive refinement: multi-start at schedule[0], then for each later
/// partition size warm-start from the prolonged incumbent alongside fresh
/// random starts. Each entry must divide the next.
RefinementTrace refine_schedule(const FunctionalSpec& spec, const std::vector<std::size_t>& schedule,
                                const AscentOptions& opts);

/// As above, but the first stage is a single local ascent from `initial`
/// (prolonged when its m divides schedule[0]) instead of a multi-start.
RefinementTrace refine_schedule(const FunctionalSpec& spec, const StepDriver& initial,
                                const std::vector<std::size_t>& schedule,
                                const AscentOptions& opts);

/// Throws std::invalid_argument unless the schedule is nonempty, positive,
/// strictly increasing and chain-divisible.
void validate_schedule(const std::vector<std::size_t>& schedule);

}  // namespace loewner
