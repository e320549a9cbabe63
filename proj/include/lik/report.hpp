#pragma once

#include "lik/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lik {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNoResult = 2,
  kExitVerificationFailed = 3,
};

struct RunOptions {
  std::string command;  // weights, densities, symmetries, recursion, verify, verify-recursion
  std::string system_path;
  bool json = false;
  std::vector<std::pair<std::string, Rational>> weights;  // pinned component weights
  std::vector<std::pair<std::string, Rational>> params;   // parameter values
  std::optional<Rational> rank;
  std::optional<Rational> max_rank;
  std::vector<Rational> ranks;
  std::optional<int> levels;
  int gap = 1;
  std::optional<std::size_t> normalize_unknown;  // 1-based
  std::string density_file;
  std::string symmetry_file;
  std::string operator_file;
};

struct RunOutput {
  int exit_code = kExitOk;
  std::string out;  // report (text or JSON)
  std::string err;  // diagnostics
};

RunOutput run(const RunOptions& options);

// Parses "name=value" with a rational value; throws std::invalid_argument.
std::pair<std::string, Rational> parse_assignment(const std::string& text);

}  // namespace lik
