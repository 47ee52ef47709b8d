#pragma once

// Command-line front end: count, constant, verify, predict.

#include <iosfwd>
#include <string>
#include <vector>

#include "dp5/arith.hpp"

namespace dp5 {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitNonConvergence = 3,
  kExitVerification = 4,
};

struct RunConfig {
  std::string subcommand;
  std::vector<i64> B;
  std::string method = "torsor";  // naive | torsor | both
  double A = 28;
  bool split = false;
  bool main_term = false;
  double tol = 1e-3;
  u64 p_max = 1'000'000;
  std::string format = "text";  // text | csv | json
  unsigned workers = 1;
  std::size_t retention_cap = 1'000'000;
  bool timing = true;
  i64 box = 50;
  i64 theta_bound = 30;
  std::string inject_fault;  // "U-V": drop that edge from the coprimality graph

  /// Throws std::invalid_argument describing the first violated rule.
  void validate() const;
};

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_constant(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Never throws; returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dp5
