#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biodilate/types.hpp"

namespace biodilate::proptest {

struct Options {
  std::uint64_t seed = 42;
  std::vector<int> dims = {2, 4, 8, 16};
  int cases = 50;
  Tolerances tol;
};

struct Summary {
  long long cases_run = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Runs the randomized invariant suites for every module; deterministic
/// under a fixed seed.
Summary run(const Options& options);

}  // namespace biodilate::proptest
