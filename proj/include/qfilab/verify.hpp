#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfilab {

struct CheckResult {
  std::string name;
  double max_error;   // worst observed deviation (NaN when not applicable)
  double tolerance;
  bool pass;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int d_min = 2;
  int d_max = 6;
  long samples = 100000;
};

// Suites: core, bounds, averages, landscape, spin, all.
std::vector<CheckResult> verify_suite(const std::string& suite,
                                      const VerifyOptions& opts);

}  // namespace qfilab
