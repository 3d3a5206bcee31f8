#pragma once

#include <utility>
#include <vector>

#include "nmlkit/limits.hpp"
#include "nmlkit/theory.hpp"
#include "nmlkit/twdp.hpp"

namespace nmlkit {

/// A stable extension, represented by its generating defaults (0-based
/// indices into the rule list, ascending). The extension itself is
/// Th(W together with the conclusions of these rules).
struct ExtensionWitness {
  std::vector<int> generating;

  friend bool operator==(const ExtensionWitness&, const ExtensionWitness&) = default;
};

struct StageResult {
  bool fixpoint = false;
  std::vector<int> applied;
};

/// Stage construction relative to `candidate`: starting from nothing,
/// repeatedly applies every rule whose prerequisite follows from W and the
/// conclusions applied so far and whose justification is consistent with W
/// plus the candidate's conclusions. `fixpoint` holds when the applied set
/// equals the candidate.
StageResult stage_fixpoint(const DefaultTheory& theory, const std::vector<int>& candidate,
                           const EntailmentOracle& oracle);

struct ExtensionResult {
  bool exists = false;
  std::vector<ExtensionWitness> witnesses;  // candidates in binary counting order
};

/// Checks all 2^|D| candidates. Throws ResourceLimit when |D| exceeds
/// `limits.dl_defaults`.
ExtensionResult extension_exists(const DefaultTheory& theory, const EntailmentOracle& oracle,
                                 const Limits& limits = Limits{});

}  // namespace nmlkit
