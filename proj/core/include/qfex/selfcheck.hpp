#pragma once

// Runtime invariant batteries, one suite per module, runnable from the CLI.
// Each check reports its trial count, the worst observed deviation, and the
// limit it was held to; a fixed seed reproduces the battery bit-for-bit.

#include <cstdint>
#include <string>
#include <vector>

namespace qfex {

struct CheckResult {
  std::string name;
  std::uint64_t trials = 0;
  double worst = 0.0;  // worst observed deviation (signed; <= limit passes)
  double limit = 0.0;
  bool pass = false;
};

/// suite is one of "gfsym", "channel", "exponent", "simkit", "all".
std::vector<CheckResult> run_suite(const std::string& suite,
                                   std::uint64_t seed);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qfex
