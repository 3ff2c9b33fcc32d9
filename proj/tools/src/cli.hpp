#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace clusterlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs `cluster-lab` with argv (args[0] is the program name). Data goes to
/// `out` (or --out files), progress and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestOptions {
  bool inject_percolation_fault = false;
  int threads = 1;
};

/// Runs the reduced-size self-check suites; returns the number of failed suites.
int selftest(const SelftestOptions& options, std::ostream& report);

}  // namespace clusterlab::cli
