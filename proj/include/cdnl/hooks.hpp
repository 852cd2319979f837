#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cdnl/heuristics.hpp"
#include "cdnl/literal.hpp"

namespace cdnl {

struct AnalyzeResult;

struct SelectionEvent {
  Lit sigma;                                // literal being resolved on
  const std::vector<uint32_t>& candidates;  // ascending registration order
  uint32_t chosen;
  HeuristicKind heuristic;
  uint32_t current_level;
};

struct ConflictEvent {
  const AnalyzeResult& result;
  uint32_t trail_level;  // decision level when the conflict was detected
  uint32_t violated_id;
};

// Optional observation points, used by the test suites for invariant and
// argmin instrumentation. All default to disabled.
struct SolverHooks {
  std::function<void(const ConflictEvent&)> on_conflict;
  std::function<void(const SelectionEvent&)> on_selection;
  std::function<void(uint32_t id)> on_record;  // dynamically recorded nogood
  std::function<void(const std::vector<Var>&)> on_unfounded_set;
  std::function<void()> on_ufs_check;  // each unfounded-set detection call
  std::function<void()> on_propagation_fixpoint;
};

}  // namespace cdnl
