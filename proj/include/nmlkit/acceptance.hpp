#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nmlkit/limits.hpp"

namespace nmlkit {

struct AcceptanceConfig {
  std::uint64_t seed = 1;
  bool quick = false;  // quarter-size random samples; fixed instances unchanged
  Limits limits;
};

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double wall_ms = 0;
};

inline constexpr int kCriterionCount = 9;

/// Runs one criterion (1-based). Exceptions inside a run become a FAIL outcome.
CriterionOutcome run_criterion(int id, const AcceptanceConfig& config);

/// All criteria in order; `on_result` sees each outcome as soon as it is known.
std::vector<CriterionOutcome> run_acceptance(const AcceptanceConfig& config,
                                             const std::function<void(const CriterionOutcome&)>& on_result = {});

/// "PASS [3] title: detail (12.3 ms)"
std::string format_outcome(const CriterionOutcome& o);

}  // namespace nmlkit
