#include "loewner/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "loewner/error.hpp"

namespace loewner {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMaxStep = 1.0;  // radians, sup-norm
constexpr double kInitialDamping = 1e-3;
constexpr double kMinDamping = 1e-12;
constexpr double kMaxDamping = 1e16;
constexpr double kTinyCurvature = 1e-300;

struct Probe {
  double value;
  std::vector<double> grad;
};

Probe probe(const FunctionalSpec& spec, const std::vector<double>& angles) {
  const StepDriver d(angles);
  const CoefficientTriple t = coeffs_234(d);
  const double value = spec(t);
  if (!std::isfinite(value)) {
    throw NumericalFailure("functional '" + spec.name() + "' returned a non-finite value");
  }
  return {value, angle_gradient(spec.sensitivity(t), grad_coeffs_234(d))};
}

double value_at(const FunctionalSpec& spec, const std::vector<double>& angles) {
  const double value = spec(coeffs_234(StepDriver(angles)));
  if (!std::isfinite(value)) {
    throw NumericalFailure("functional '" + spec.name() + "' returned a non-finite value");
  }
  return value;
}

double sup_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
// exception by index is rethrown after all workers finish.
void run_indexed(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::optional<std::size_t> error_index;
  std::exception_ptr error;
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error_index || i < *error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

OptimizationResult best_of(std::vector<std::optional<OptimizationResult>>& results) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i]->value > results[best]->value) best = i;
  }
  return std::move(*results[best]);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 start_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return std::mt19937_64(
      splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x100000001b3ULL + index)));
}

// 53 random mantissa bits in [0, 1); avoids implementation-defined
// distributions so starts are identical across standard libraries.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void validate(const AscentOptions& opts) {
  if (!(opts.grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");
  if (opts.max_iters < 0) throw std::invalid_argument("max_iters must be nonnegative");
  if (opts.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (opts.refine_restarts < 0) throw std::invalid_argument("refine_restarts must be nonnegative");
  if (!(opts.near_constant_fraction >= 0.0 && opts.near_constant_fraction <= 1.0)) {
    throw std::invalid_argument("near_constant_fraction must lie in [0, 1]");
  }
  if (!(opts.near_constant_spread >= 0.0) || !std::isfinite(opts.near_constant_spread)) {
    throw std::invalid_argument("near_constant_spread must be finite and nonnegative");
  }
}

void validate_schedule(const std::vector<std::size_t>& schedule) {
  if (schedule.empty()) throw std::invalid_argument("schedule is empty");
  if (schedule.front() < 1) throw std::invalid_argument("schedule entries must be positive");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) {
      throw std::invalid_argument("schedule must be strictly increasing");
    }
    if (schedule[i] % schedule[i - 1] != 0) {
      throw std::invalid_argument("schedule entry " + std::to_string(schedule[i]) +
                                  " is not a multiple of " + std::to_string(schedule[i - 1]));
    }
  }
}

OptimizationResult local_maximize(const FunctionalSpec& spec, const StepDriver& d0,
                                  const AscentOptions& opts) {
  validate(opts);
  const std::size_t m = d0.m();
  std::vector<double> x(d0.angles().begin(), d0.angles().end());
  Probe current = probe(spec, x);

  int iters = 0;
  bool converged = sup_norm(current.grad) < opts.grad_tol;
  double damping = -1.0;  // set relative to the spectrum on first use
  std::vector<double> trial(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;

  while (!converged && iters < opts.max_iters) {
    const std::vector<double> h = hess_functional(spec, StepDriver(x));
    eig.compute(Eigen::Map<const Eigen::MatrixXd>(h.data(), static_cast<Eigen::Index>(m),
                                                  static_cast<Eigen::Index>(m)));
    const Eigen::VectorXd abs_eigs = eig.eigenvalues().cwiseAbs();
    const double scale = std::max(abs_eigs.maxCoeff(), kTinyCurvature);
    const Eigen::VectorXd grad_eig =
        eig.eigenvectors().transpose() *
        Eigen::Map<const Eigen::VectorXd>(current.grad.data(), static_cast<Eigen::Index>(m));
    if (damping < 0.0) damping = kInitialDamping * scale;

    bool accepted = false;
    while (damping <= kMaxDamping * scale) {
      // Saddle-free damped Newton step: curvature magnitudes plus damping,
      // so the direction is always an ascent direction.
      const Eigen::VectorXd coeffs =
          grad_eig.array() / (abs_eigs.array() + damping);
      Eigen::VectorXd dir = eig.eigenvectors() * coeffs;
      const double len = dir.cwiseAbs().maxCoeff();
      if (len > kMaxStep) dir *= kMaxStep / len;
      double slope = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        trial[k] = x[k] + dir[static_cast<Eigen::Index>(k)];
        slope += current.grad[k] * dir[static_cast<Eigen::Index>(k)];
      }
      const double v = value_at(spec, trial);
      if (v > current.value && v >= current.value + kArmijo * slope) {
        accepted = true;
        damping = std::max(damping / 3.0, kMinDamping * scale);
        break;
      }
      damping *= 4.0;
    }
    if (!accepted) break;  // no representable increase left

    x = trial;
    current = probe(spec, x);
    ++iters;
    converged = sup_norm(current.grad) < opts.grad_tol;
  }

  OptimizationResult out{StepDriver(x), 0.0, iters, converged};
  out.value = eval_functional(spec, out.driver);
  return out;
}

std::vector<double> random_angles(std::size_t m, std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t index) {
  std::mt19937_64 rng = start_rng(seed, stream, index);
  std::vector<double> angles(m);
  for (double& a : angles) a = unit_uniform(rng) * kTwoPi;
  return angles;
}

std::vector<double> near_constant_angles(std::size_t m, double spread, std::uint64_t seed,
                                         std::uint64_t stream, std::uint64_t index) {
  std::mt19937_64 rng = start_rng(seed, stream, index);
  const double center = unit_uniform(rng) * kTwoPi;
  std::vector<double> angles(m);
  for (std::size_t k = 0; k < m; k += 2) {
    // Box-Muller, two normals per draw
    const double r = std::sqrt(-2.0 * std::log1p(-unit_uniform(rng)));
    const double t = kTwoPi * unit_uniform(rng);
    angles[k] = center + spread * r * std::cos(t);
    if (k + 1 < m) angles[k + 1] = center + spread * r * std::sin(t);
  }
  return angles;
}

std::vector<double> random_start(std::size_t m, const AscentOptions& opts, std::uint64_t stream,
                                 std::uint64_t index, std::uint64_t count) {
  const auto near = static_cast<std::uint64_t>(
      std::llround(opts.near_constant_fraction * static_cast<double>(count)));
  if (index < near) {
    return near_constant_angles(m, opts.near_constant_spread, opts.seed, stream, index);
  }
  return random_angles(m, opts.seed, stream, index);
}

OptimizationResult multi_start(const FunctionalSpec& spec, std::size_t m,
                               const AscentOptions& opts) {
  validate(opts);
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  const std::size_t count = static_cast<std::size_t>(opts.restarts) + 2;
  std::vector<std::optional<OptimizationResult>> results(count);
  run_indexed(count, opts.workers, [&](std::size_t i) {
    std::vector<double> start;
    if (i == 0) {
      start.assign(m, std::numbers::pi);
    } else if (i == 1) {
      start.assign(m, 0.0);
    } else {
      start = random_start(m, opts, 0, i - 2, count - 2);
    }
    results[i] = local_maximize(spec, StepDriver(std::move(start)), opts);
  });
  return best_of(results);
}

namespace {

RefinementTrace continue_schedule(const FunctionalSpec& spec, RefinementTrace trace,
                                  const std::vector<std::size_t>& schedule,
                                  const AscentOptions& opts) {
  for (std::size_t s = 1; s < schedule.size(); ++s) {
    const std::size_t m = schedule[s];
    const StepDriver warm = refine(trace.stages.back().result.driver, m / schedule[s - 1]);
    const std::size_t count = static_cast<std::size_t>(opts.refine_restarts) + 1;
    std::vector<std::optional<OptimizationResult>> results(count);
    run_indexed(count, opts.workers, [&](std::size_t i) {
      results[i] = i == 0 ? local_maximize(spec, warm, opts)
                          : local_maximize(spec, StepDriver(random_start(m, opts, s, i - 1, count - 1)),
                                           opts);
    });
    trace.stages.push_back({m, best_of(results)});
  }
  return trace;
}

}  // namespace

RefinementTrace refine_schedule(const FunctionalSpec& spec,
                                const std::vector<std::size_t>& schedule,
                                const AscentOptions& opts) {
  validate(opts);
  validate_schedule(schedule);
  RefinementTrace trace;
  trace.stages.push_back({schedule.front(), multi_start(spec, schedule.front(), opts)});
  return continue_schedule(spec, std::move(trace), schedule, opts);
}

RefinementTrace refine_schedule(const FunctionalSpec& spec, const StepDriver& initial,
                                const std::vector<std::size_t>& schedule,
                                const AscentOptions& opts) {
  validate(opts);
  validate_schedule(schedule);
  if (schedule.front() % initial.m() != 0) {
    throw std::invalid_argument("initial driver has m = " + std::to_string(initial.m()) +
                                ", which does not divide " + std::to_string(schedule.front()));
  }
  RefinementTrace trace;
  trace.stages.push_back(
      {schedule.front(),
       local_maximize(spec, refine(initial, schedule.front() / initial.m()), opts)});
  return continue_schedule(spec, std::move(trace), schedule, opts);
}

}  // namespace loewner
