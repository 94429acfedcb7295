#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "loewner/optimizer.hpp"

namespace loewner::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kNumericalFailure = 3,
};

enum class OutputFormat { kJson, kCsv };

struct RunConfig {
  std::string functional;
  std::vector<std::size_t> schedule;
  AscentOptions options;
  std::optional<std::filesystem::path> init;
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::kJson;
};

/// Throws std::invalid_argument on an unknown functional or a bad schedule.
void validate(const RunConfig& config);

/// "50,100,200" -> {50, 100, 200}. Throws std::invalid_argument.
std::vector<std::size_t> parse_schedule(const std::string& text);

/// Partition sizes of the reproduced table; `full` adds m = 400.
std::vector<std::size_t> table1_schedule(bool full);

/// First-stage restarts used by `table1` unless overridden.
inline constexpr int kTable1Restarts = 256;
inline constexpr std::uint64_t kTable1Seed = 1;

int cmd_coeff(const std::filesystem::path& angle_file, std::ostream& out, std::ostream& err);
int cmd_optimize(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_table1(const AscentOptions& options, bool full,
               const std::optional<std::filesystem::path>& out_path, std::ostream& out,
               std::ostream& err);
int cmd_verify_table2(std::ostream& out, std::ostream& err);
int cmd_milin_bound(double tol, std::ostream& out, std::ostream& err);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loewner::cli
