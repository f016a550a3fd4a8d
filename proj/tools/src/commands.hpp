#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace infoprice::cli {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,
  kUnbounded = 2,
  kInvalidInput = 3,
  kVerificationFailure = 4,
  kNumericalFailure = 5,
};

struct RunOptions {
  double tol_feas = 1e-8;
  double tol_gap = 1e-7;
  int samples = 50;
  std::uint64_t seed = 20240613;
  bool strict_lineality = false;
  std::filesystem::path sidecar;            // verify
  std::string scenario;                     // conj; empty means the first
  std::vector<std::vector<double>> points;  // conj; empty means the origin
};

struct RunResult {
  int exit_code = kOk;
  nlohmann::ordered_json report;
};

const std::vector<std::string>& commands();

/// Runs one command on a problem file. Never throws; failures are mapped
/// onto exit codes and described in report["error"]. Warnings go to stderr.
RunResult run(const std::string& command, const std::filesystem::path& problem,
              const RunOptions& options);

/// Parses "1,2;3,4" into points.
std::vector<std::vector<double>> parsePoints(const std::string& text);

}  // namespace infoprice::cli
