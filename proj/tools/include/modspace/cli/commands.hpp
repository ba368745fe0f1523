#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>

#include "modspace/cli/config.hpp"

namespace modspace::cli {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitFailure = 1,  // violation, divergence, failed certificate
  kExitUsage = 2,    // malformed config or arguments
};

/// Runs every modular-space checker and writes axioms.json, delta2.json,
/// fatou.json (and s_convexity.json when check.s is set) plus check.json.
/// Exit 0 iff no checker found a violation.
int run_check(const ProblemConfig& cfg, std::ostream& log);

/// Verifies the contraction claim, picks the direct or power path, and writes
/// trace.csv and solve.json. Exit 0 iff the iteration converged.
int run_solve(const ProblemConfig& cfg, std::ostream& log);

/// Builds the chain certificate and writes certificate.csv and
/// certificate.json. Exit 0 iff every order inequality holds.
int run_certificate(const ProblemConfig& cfg, std::ostream& log);

struct RunOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  bool quiet = false;
};

/// Loads the config, applies overrides and dispatches `command`
/// (check | solve | certificate). Never throws; failures map to exit codes.
int run_command(std::string_view command, const RunOptions& opts, std::ostream& out,
                std::ostream& err);

}  // namespace modspace::cli
