#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linerdv/evaluation.hpp"

namespace linerdv {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerificationOptions {
  bool parallel = true;
  std::uint64_t base_seed = 1;
};

// Runs the built-in verification suite: every proved bound, the tightness
// and witness constructions, the grid sweeps, the per-case table
// agreement, and the movement-rule validator across all generated plans.
std::vector<CriterionResult> run_acceptance(const VerificationOptions& options = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace linerdv
