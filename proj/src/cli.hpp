#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace eggshell::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,       // malformed flags or input, shape mismatch, out-of-range parameter
  kResource = 3,    // term cap or dimension guard
  kBracket = 4,     // threshold bracket does not straddle slope -1
  kInternal = 5,
};

struct RunConfig {
  std::string command;
  std::string domain;   // path or inline JSON
  std::string spec;     // zeta spec, path or inline JSON
  std::string kind;
  std::string index;    // comma-separated flat multi-index
  std::optional<double> p;
  std::optional<long long> N;
  long long degree_from = 0;
  long long degree_to = 5;
  double tol = 0.1;
  double margin = 0.15;
  double window = 0.5;
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;  // norm: Monte-Carlo samples, 0 disables the oracle
  unsigned workers = 0;       // 0 picks EGGSHELL_WORKERS or the core count
  std::string format = "json";
  double cap = 2e8;
  bool allow_high_dimension = false;
  std::optional<double> p_lo;
  std::optional<double> p_hi;
  std::string expansion;  // verify-gamma: R1..R5, empty for all
  double a = 0.7;
  std::optional<double> b;
  int order = 2;
  std::string r3 = "composed";
};

nlohmann::json config_to_json(const RunConfig& c);
RunConfig config_from_json(const nlohmann::json& j);

/// Runs one command and returns its JSON report (inputs embedded under
/// "config"). Library exceptions propagate.
nlohmann::json execute(const RunConfig& config);

/// CSV projection of a report.
std::string to_csv(const nlohmann::json& report);

/// Full entry point: parses argv, runs, prints, maps errors to exit codes.
int main(int argc, char** argv);

}  // namespace eggshell::cli
