#include "cdnl/heuristics.hpp"

#include <gtest/gtest.h>

#include "cdnl/analyze.hpp"
#include "cdnl/solve.hpp"
#include "support/corpus.hpp"

using namespace cdnl;
using testsupport::TwoReasons;

namespace {

struct Conflicted : TwoReasons {
  std::vector<uint32_t> sigma_x, sigma_w;
  Conflicted() {
    run_to_conflict();
    sigma_x = antecedents(T("x"), store, trail);
    sigma_w = antecedents(F("w"), store, trail);
  }
};

TEST(LevelsList, DescendingReasonLevels) {
  Conflicted fig;
  // n8 = {F p, T t, F x}, sigma = T x: reason levels (3, 1)
  EXPECT_EQ(levels_list(fig.store[TwoReasons::n(8)], fig.T("x"), fig.trail),
            (std::vector<uint32_t>{3, 1}));
  // duplicates preserved: n7 reason {T t, F u} -> (3, 3)
  EXPECT_EQ(levels_list(fig.store[TwoReasons::n(7)], fig.T("x"), fig.trail),
            (std::vector<uint32_t>{3, 3}));
  // n4 = {T s, T w}, sigma = F w: (3)
  EXPECT_EQ(levels_list(fig.store[TwoReasons::n(4)], fig.F("w"), fig.trail),
            (std::vector<uint32_t>{3}));
}

TEST(LevelsList, EmptyReason) {
  NogoodStore store(1);
  Trail trail(1);
  uint32_t id = store.record({Lit::T(0)}, NogoodOrigin::Static);
  trail.assign(Lit::F(0), static_cast<int32_t>(id));
  EXPECT_TRUE(levels_list(store[id], Lit::F(0), trail).empty());
}

TEST(Select, FirstTakesTheRegistrationHead) {
  Conflicted fig;
  ASSERT_EQ(fig.sigma_x, (std::vector<uint32_t>{TwoReasons::n(7), TwoReasons::n(8)}));
  EXPECT_EQ(select_antecedent(HeuristicKind::First, fig.T("x"), fig.sigma_x,
                              fig.trail, fig.store, 3),
            TwoReasons::n(7));
}

TEST(Select, ShortBreaksTiesByRegistration) {
  Conflicted fig;
  // |n7| = |n8| = 3: tie, registration order picks n7
  EXPECT_EQ(select_antecedent(HeuristicKind::Short, fig.T("x"), fig.sigma_x,
                              fig.trail, fig.store, 3),
            TwoReasons::n(7));
  // n4 (2 literals) beats n6 (3 literals)
  EXPECT_EQ(select_antecedent(HeuristicKind::Short, fig.F("w"), fig.sigma_w,
                              fig.trail, fig.store, 3),
            TwoReasons::n(4));
}

TEST(Select, LexPrefersSmallerLevelLists) {
  Conflicted fig;
  // levels(n8) = (3,1) < (3,3) = levels(n7)
  EXPECT_EQ(select_antecedent(HeuristicKind::Lex, fig.T("x"), fig.sigma_x,
                              fig.trail, fig.store, 3),
            TwoReasons::n(8));
  // levels(n4) = (3) < (3,2) = levels(n6): a proper prefix is smaller
  EXPECT_EQ(select_antecedent(HeuristicKind::Lex, fig.F("w"), fig.sigma_w,
                              fig.trail, fig.store, 3),
            TwoReasons::n(4));
}

TEST(Select, AvgComparesMeanLevels) {
  Conflicted fig;
  // avg(3,1) = 2 < 3 = avg(3,3)
  EXPECT_EQ(select_antecedent(HeuristicKind::Avg, fig.T("x"), fig.sigma_x,
                              fig.trail, fig.store, 3),
            TwoReasons::n(8));
  // avg(3,2) = 2.5 < 3 = avg(3)
  EXPECT_EQ(select_antecedent(HeuristicKind::Avg, fig.F("w"), fig.sigma_w,
                              fig.trail, fig.store, 3),
            TwoReasons::n(6));
}

TEST(Select, ResCountsCurrentLevelReasonLiterals) {
  Conflicted fig;
  // n8 reason {F p, T t} has one level-3 literal, n7 reason {T t, F u} two
  EXPECT_EQ(select_antecedent(HeuristicKind::Res, fig.T("x"), fig.sigma_x,
                              fig.trail, fig.store, 3),
            TwoReasons::n(8));
  // n4 and n6 both have one: tie, registration order
  EXPECT_EQ(select_antecedent(HeuristicKind::Res, fig.F("w"), fig.sigma_w,
                              fig.trail, fig.store, 3),
            TwoReasons::n(4));
}

TEST(Select, ActiveMaximizesActivity) {
  Conflicted fig;
  // all zero: tie towards registration order
  EXPECT_EQ(select_antecedent(HeuristicKind::Active, fig.T("x"), fig.sigma_x,
                              fig.trail, fig.store, 3),
            TwoReasons::n(7));
  fig.store.bump_activity(TwoReasons::n(8), 1.0);
  EXPECT_EQ(select_antecedent(HeuristicKind::Active, fig.T("x"), fig.sigma_x,
                              fig.trail, fig.store, 3),
            TwoReasons::n(8));
}

TEST(Select, PropPrefersNogoodsThatFiredLow) {
  Conflicted fig;
  // n8 fired T x at level 3; n7 never fired: unset orders worst
  ASSERT_EQ(fig.store[TwoReasons::n(8)].min_implied_level, 3u);
  ASSERT_EQ(fig.store[TwoReasons::n(7)].min_implied_level, kLevelUnset);
  EXPECT_EQ(select_antecedent(HeuristicKind::Prop, fig.T("x"), fig.sigma_x,
                              fig.trail, fig.store, 3),
            TwoReasons::n(8));
  // both unset: registration order
  EXPECT_EQ(select_antecedent(HeuristicKind::Prop, fig.F("w"), fig.sigma_w,
                              fig.trail, fig.store, 3),
            TwoReasons::n(4));
}

TEST(Select, EmptyCandidateListIsContractViolation) {
  NogoodStore store(1);
  Trail trail(1);
  std::vector<uint32_t> none;
  EXPECT_THROW(select_antecedent(HeuristicKind::Short, Lit::T(0), none, trail,
                                 store, 1),
               ContractViolation);
}

TEST(Select, HeuristicNamesRoundTrip) {
  for (HeuristicKind k : kAllHeuristics)
    EXPECT_EQ(heuristic_from_name(heuristic_name(k)), k);
  EXPECT_FALSE(heuristic_from_name("fancy").has_value());
}

// Instrumented argmin soundness over solver runs: the chosen antecedent is
// never strictly beaten under the active heuristic's own score.
TEST(Select, ArgminSoundnessOnRandomPrograms) {
  SplitMix64 gen(71);
  std::vector<std::string> texts;
  for (int i = 0; i < 120; ++i) texts.push_back(testsupport::random_program_text(gen));
  uint64_t selections = 0;
  for (HeuristicKind kind : kAllHeuristics) {
    for (const auto& text : texts) {
      Program prog = parse_program(text);
      SolverConfig cfg;
      cfg.heuristic = kind;
      Solver solver(prog, cfg);
      solver.hooks.on_selection = [&](const SelectionEvent& ev) {
        ++selections;
        const NogoodStore& store = solver.store();
        const Trail& trail = solver.trail();
        auto levels = [&](uint32_t id) {
          return levels_list(store[id], ev.sigma, trail);
        };
        auto count_now = [&](uint32_t id) {
          uint32_t c = 0;
          for (Lit l : store[id].lits)
            if (l != ~ev.sigma && trail.level(l.var()) == ev.current_level) ++c;
          return c;
        };
        for (uint32_t other : ev.candidates) {
          switch (ev.heuristic) {
            case HeuristicKind::First:
              EXPECT_EQ(ev.chosen, ev.candidates.front());
              break;
            case HeuristicKind::Short:
              EXPECT_GE(store[other].size(), store[ev.chosen].size());
              break;
            case HeuristicKind::Lex: {
              auto a = levels(other), b = levels(ev.chosen);
              EXPECT_FALSE(std::lexicographical_compare(a.begin(), a.end(),
                                                        b.begin(), b.end()));
              break;
            }
            case HeuristicKind::Avg: {
              auto a = levels(other), b = levels(ev.chosen);
              unsigned long long sa = 0, sb = 0;
              for (auto x : a) sa += x;
              for (auto x : b) sb += x;
              unsigned long long na = a.empty() ? 1 : a.size();
              unsigned long long nb = b.empty() ? 1 : b.size();
              EXPECT_GE(sa * nb, sb * na);
              break;
            }
            case HeuristicKind::Res:
              EXPECT_GE(count_now(other), count_now(ev.chosen));
              break;
            case HeuristicKind::Active:
              EXPECT_LE(store[other].activity, store[ev.chosen].activity);
              break;
            case HeuristicKind::Prop: {
              uint64_t a = store[other].min_implied_level;
              uint64_t b = store[ev.chosen].min_implied_level;
              EXPECT_GE(a, b);
              break;
            }
          }
        }
      };
      solver.solve();
    }
  }
  EXPECT_GT(selections, 200u);
}

}  // namespace
