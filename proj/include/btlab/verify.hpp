#pragma once

#include <string>
#include <vector>

#include "btlab/util.hpp"

namespace btlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t guard = 100'000'000ull;  // the suite's own enumeration budget
  std::uint64_t seed = 20240501ull;
  bool include_slow = true;  // run every criterion (false trims e.g. p=3 e=3)
};

// Runs one acceptance criterion (1..10); throws InvalidArgument on bad id.
CriterionResult run_criterion(int id, const VerifyOptions& opt);
std::vector<CriterionResult> run_all_criteria(const VerifyOptions& opt);

}  // namespace btlab
