#pragma once

#include <cstdint>
#include <iosfwd>

#include <json.hpp>

namespace blochgeo::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kToleranceBreach = 3,
};

/// Parses `argv` and runs one subcommand. The JSON summary goes to `out`,
/// diagnostics to `err`. Never throws; every failure maps to an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Invariant suites shared by `verify`. Each returns
/// {"suite", "seed", "checks": [{"name", "passed", "value", "threshold"}...], "passed"}.
/// `trials` scales the random sample counts; 0 selects each suite's default.
nlohmann::json run_suite(const std::string& name, std::uint64_t seed, int trials);

}  // namespace blochgeo::cli
