#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "loewner/driver.hpp"
#include "loewner/optimizer.hpp"

namespace loewner {

/// Parses an angle file. Accepted forms:
///   - JSON `{"m": <int>, "angles_rad": [<float>, ...]}`
///   - a trace JSON (see trace_to_json); the last stage's angles are used
///   - single-column CSV of radians, optional non-numeric header, '#' comments
/// Throws std::invalid_argument on malformed input.
StepDriver parse_angles(std::string_view text);
StepDriver read_angles(const std::filesystem::path& path);

/// `{"m": ..., "angles_rad": [...]}` with round-trip precision.
std::string angles_to_json(const StepDriver& d);

std::string angles_to_csv(const StepDriver& d);

/// `{"functional": str, "seed": int, "stages": [{"m", "value", "angles_rad",
/// "iterations", "converged"}]}`
std::string trace_to_json(std::string_view functional, std::uint64_t seed,
                          const RefinementTrace& trace);

/// Header `m,value,iterations,converged,angles_rad`; angles separated by ';'.
std::string trace_to_csv(const RefinementTrace& trace);

struct ParsedTrace {
  std::string functional;
  std::uint64_t seed = 0;
  RefinementTrace trace;
};

ParsedTrace parse_trace(std::string_view text);

/// Angles of the m = 20 driver whose odd7 value exceeds 1090/1083.
std::span<const double> table2_angles();

}  // namespace loewner
