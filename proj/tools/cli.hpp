#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fdsched/engine.hpp"

namespace fdsched::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Environment variable naming the directory for outputs when --out is not given.
inline constexpr const char* kOutputDirEnv = "FDSCHED_OUTPUT_DIR";

// "0,1,2", "-6..-1" (inclusive integer range) and "30,40,...,90" (arithmetic
// progression continued from the two values before the ellipsis).
std::vector<double> parse_axis_values(std::string_view text);

// Comma-separated scheduler names; throws ConfigError on unknown or empty lists.
std::vector<SchedulerKind> parse_schedulers(std::string_view text);

enum class Format { Csv, Json };

// Writes rows to `path` ("-" for `out`). Throws std::runtime_error on I/O failure.
void emit(const std::vector<SweepRow>& rows, Format format, const std::string& path, std::ostream& out);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fdsched::cli
