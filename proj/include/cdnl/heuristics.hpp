#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdnl/contract.hpp"
#include "cdnl/nogoods.hpp"
#include "cdnl/trail.hpp"

namespace cdnl {

// Antecedent-selection strategies for conflict resolution. Every strategy is
// a pure function of the candidate list, trail state, and nogood metadata;
// ties always break towards the smallest registration index (candidates come
// in ascending registration order).
enum class HeuristicKind : uint8_t {
  First,   // head of the candidate list
  Short,   // fewest literals
  Lex,     // lexicographically smallest descending level list
  Avg,     // smallest mean reason level
  Res,     // fewest reason literals at the current decision level
  Active,  // highest activity
  Prop     // smallest level at which the nogood ever fired as unit
};

inline constexpr HeuristicKind kAllHeuristics[] = {
    HeuristicKind::First, HeuristicKind::Short, HeuristicKind::Lex,
    HeuristicKind::Avg,   HeuristicKind::Res,   HeuristicKind::Active,
    HeuristicKind::Prop};

inline std::string_view heuristic_name(HeuristicKind k) {
  switch (k) {
    case HeuristicKind::First: return "first";
    case HeuristicKind::Short: return "short";
    case HeuristicKind::Lex: return "lex";
    case HeuristicKind::Avg: return "avg";
    case HeuristicKind::Res: return "res";
    case HeuristicKind::Active: return "active";
    case HeuristicKind::Prop: return "prop";
  }
  return "?";
}

inline std::optional<HeuristicKind> heuristic_from_name(std::string_view name) {
  for (HeuristicKind k : kAllHeuristics)
    if (heuristic_name(k) == name) return k;
  return std::nullopt;
}

// Decision levels of the reason (antecedent minus the complement of sigma),
// sorted descending. Duplicates are preserved.
inline std::vector<uint32_t> levels_list(const Nogood& antecedent, Lit sigma,
                                         const Trail& t) {
  std::vector<uint32_t> levels;
  levels.reserve(antecedent.lits.size());
  for (Lit l : antecedent.lits) {
    if (l == ~sigma) continue;
    levels.push_back(t.level(l.var()));
  }
  std::sort(levels.begin(), levels.end(), std::greater<uint32_t>());
  return levels;
}

namespace detail {

inline uint32_t reason_count_at_level(const Nogood& n, Lit sigma, const Trail& t,
                                      uint32_t level) {
  uint32_t count = 0;
  for (Lit l : n.lits)
    if (l != ~sigma && t.level(l.var()) == level) ++count;
  return count;
}

// Exact mean comparison via cross-multiplication; the empty reason counts
// as mean 0.
inline bool avg_less(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  unsigned __int128 sum_a = 0, sum_b = 0;
  for (uint32_t x : a) sum_a += x;
  for (uint32_t x : b) sum_b += x;
  unsigned __int128 na = a.empty() ? 1 : a.size();
  unsigned __int128 nb = b.empty() ? 1 : b.size();
  return sum_a * nb < sum_b * na;
}

}  // namespace detail

// Picks one antecedent from a nonempty candidate list (ascending registration
// order, each a valid antecedent of sigma).
inline uint32_t select_antecedent(HeuristicKind kind, Lit sigma,
                                  const std::vector<uint32_t>& candidates,
                                  const Trail& t, const NogoodStore& store,
                                  uint32_t current_level) {
  CDNL_REQUIRE(!candidates.empty(), "antecedent selection over empty candidates");
  if (kind == HeuristicKind::First || candidates.size() == 1) return candidates[0];

  uint32_t best = candidates[0];
  switch (kind) {
    case HeuristicKind::Short: {
      uint32_t best_size = store[best].size();
      for (size_t i = 1; i < candidates.size(); ++i) {
        uint32_t s = store[candidates[i]].size();
        if (s < best_size) {
          best = candidates[i];
          best_size = s;
        }
      }
      break;
    }
    case HeuristicKind::Lex: {
      std::vector<uint32_t> best_levels = levels_list(store[best], sigma, t);
      for (size_t i = 1; i < candidates.size(); ++i) {
        std::vector<uint32_t> lv = levels_list(store[candidates[i]], sigma, t);
        if (std::lexicographical_compare(lv.begin(), lv.end(), best_levels.begin(),
                                         best_levels.end())) {
          best = candidates[i];
          best_levels = std::move(lv);
        }
      }
      break;
    }
    case HeuristicKind::Avg: {
      std::vector<uint32_t> best_levels = levels_list(store[best], sigma, t);
      for (size_t i = 1; i < candidates.size(); ++i) {
        std::vector<uint32_t> lv = levels_list(store[candidates[i]], sigma, t);
        if (detail::avg_less(lv, best_levels)) {
          best = candidates[i];
          best_levels = std::move(lv);
        }
      }
      break;
    }
    case HeuristicKind::Res: {
      uint32_t best_count =
          detail::reason_count_at_level(store[best], sigma, t, current_level);
      for (size_t i = 1; i < candidates.size(); ++i) {
        uint32_t c = detail::reason_count_at_level(store[candidates[i]], sigma, t,
                                                   current_level);
        if (c < best_count) {
          best = candidates[i];
          best_count = c;
        }
      }
      break;
    }
    case HeuristicKind::Active: {
      double best_act = store[best].activity;
      for (size_t i = 1; i < candidates.size(); ++i) {
        double a = store[candidates[i]].activity;
        if (a > best_act) {
          best = candidates[i];
          best_act = a;
        }
      }
      break;
    }
    case HeuristicKind::Prop: {
      uint64_t best_level = store[best].min_implied_level;
      for (size_t i = 1; i < candidates.size(); ++i) {
        uint64_t lv = store[candidates[i]].min_implied_level;
        if (lv < best_level) {
          best = candidates[i];
          best_level = lv;
        }
      }
      break;
    }
    case HeuristicKind::First:
      break;
  }
  return best;
}

}  // namespace cdnl
