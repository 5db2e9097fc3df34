#pragma once

#include <string>
#include <vector>

// Acceptance panels: anchored closed-form values plus property suites over
// the figure-reproduction parameter families. Shared by the `verify` CLI
// subcommand and the acceptance test binary.

namespace tor::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  bool include_oracle = true;  // brute-force oracle comparisons (slow)
  bool quick = false;          // fast subset only
};

std::vector<CheckResult> run_acceptance(const Options& opt = {});

}  // namespace tor::verify
