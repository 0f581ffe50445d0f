#include "btlab/verify.hpp"

namespace btlab {

CriterionResult run_criterion(int id, const VerifyOptions& opt) {
  (void)opt;
  throw InvalidArgument("criterion " + std::to_string(id) + ": not wired yet");
}

std::vector<CriterionResult> run_all_criteria(const VerifyOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) out.push_back(run_criterion(id, opt));
  return out;
}

}  // namespace btlab
