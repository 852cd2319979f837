#include "cdnl/propagate.hpp"

#include <gtest/gtest.h>

#include "cdnl/solve.hpp"
#include "support/corpus.hpp"

using namespace cdnl;
using testsupport::TwoReasons;

namespace {

TEST(Propagate, TwoReasonsDerivesTheFullAssignment) {
  TwoReasons fig;
  uint32_t violated = fig.run_to_conflict();
  EXPECT_EQ(violated, TwoReasons::n(9));
  std::vector<Lit> expected{fig.F("a"), fig.F("b"), fig.F("p"), fig.T("q"),
                            fig.T("r"), fig.T("s"), fig.F("v"), fig.T("t"),
                            fig.F("u"), fig.F("w"), fig.T("x")};
  ASSERT_EQ(fig.trail.size(), expected.size());
  for (uint32_t i = 0; i < expected.size(); ++i) EXPECT_EQ(fig.trail[i], expected[i]);
  EXPECT_EQ(fig.trail.level(fig.var("a")), 0u);
  EXPECT_EQ(fig.trail.level(fig.var("b")), 0u);
  EXPECT_EQ(fig.trail.level(fig.var("p")), 1u);
  EXPECT_EQ(fig.trail.level(fig.var("q")), 2u);
  EXPECT_EQ(fig.trail.level(fig.var("r")), 3u);
  for (const char* name : {"s", "v", "t", "u", "w", "x"})
    EXPECT_EQ(fig.trail.level(fig.var(name)), 3u);
  // no assignment happened after the violation was detected
  EXPECT_EQ(fig.trail[fig.trail.size() - 1], fig.T("x"));
}

TEST(Propagate, UnitLiteralClassification) {
  TwoReasons fig;
  fig.prop.propagate();
  fig.trail.decide(fig.T("r"));
  // n1 = {T r, F s}: T r holds, s unassigned -> unit on F s
  UnitResult r = unit_literal(fig.store[TwoReasons::n(1)], fig.trail);
  ASSERT_EQ(r.kind, UnitResult::Unit);
  EXPECT_EQ(r.unit_lit, fig.F("s"));
  // two unassigned literals -> unresolved
  EXPECT_EQ(unit_literal(fig.store[TwoReasons::n(2)], fig.trail).kind,
            UnitResult::Unresolved);
}

TEST(Propagate, UnitLiteralViolatedAndSatisfied) {
  TwoReasons fig;
  fig.run_to_conflict();
  // n9 = {F w, T x} is fully contained in the assignment
  EXPECT_EQ(unit_literal(fig.store[TwoReasons::n(9)], fig.trail).kind,
            UnitResult::Violated);
  // n1 = {T r, F s} has the false literal F s: never violatable here
  EXPECT_EQ(unit_literal(fig.store[TwoReasons::n(1)], fig.trail).kind,
            UnitResult::Unresolved);
}

TEST(Propagate, FixpointLeavesNothingUnit) {
  TwoReasons fig;
  fig.prop.propagate();
  for (Lit d : {fig.F("p"), fig.T("q")}) {
    fig.trail.decide(d);
    PropagationResult r = fig.prop.propagate();
    ASSERT_FALSE(r.conflict);
    for (uint32_t id = 0; id < fig.store.size(); ++id) {
      UnitResult u = unit_literal(fig.store[id], fig.trail);
      EXPECT_NE(u.kind, UnitResult::Unit) << "nogood " << id;
      EXPECT_NE(u.kind, UnitResult::Violated) << "nogood " << id;
    }
  }
}

TEST(Propagate, MinImpliedLevelTracksUnitFiring) {
  TwoReasons fig;
  fig.run_to_conflict();
  EXPECT_EQ(fig.store[TwoReasons::kTa].min_implied_level, 0u);   // fired F a at 0
  EXPECT_EQ(fig.store[TwoReasons::n(0)].min_implied_level, 0u);  // fired F b at 0
  EXPECT_EQ(fig.store[TwoReasons::n(1)].min_implied_level, 3u);  // fired T s at 3
  // n6 and n7 were pre-empted and never fired
  EXPECT_EQ(fig.store[TwoReasons::n(6)].min_implied_level, kLevelUnset);
  EXPECT_EQ(fig.store[TwoReasons::n(7)].min_implied_level, kLevelUnset);
}

TEST(Propagate, MinImpliedLevelShrinksOnRederivation) {
  NogoodStore store(3);
  Trail trail(3);
  Propagator prop(nullptr, store, trail, nullptr);
  uint32_t id = store.record({Lit::T(0), Lit::F(1)}, NogoodOrigin::Static);
  prop.attach(id);
  trail.decide(Lit::T(2));
  trail.decide(Lit::T(0));
  ASSERT_FALSE(prop.propagate().conflict);  // fires T 1 at level 2
  EXPECT_EQ(store[id].min_implied_level, 2u);
  trail.backjump(0);
  prop.on_backjump();
  trail.decide(Lit::T(0));
  ASSERT_FALSE(prop.propagate().conflict);  // re-fires at level 1
  EXPECT_EQ(store[id].min_implied_level, 1u);
}

TEST(Propagate, UnfoundedLoopIsFalsifiedThroughLoopNogoods) {
  Program p = testsupport::make_program("a :- b.\nb :- a.\n");
  ASSERT_FALSE(p.tight);
  NogoodStore store(p.num_vars());
  Trail trail(p.num_vars());
  std::vector<std::vector<Var>> found;
  SolverHooks hooks;
  hooks.on_unfounded_set = [&](const std::vector<Var>& u) { found.push_back(u); };
  Propagator prop(&p, store, trail, &hooks);
  for (auto& lits : completion_nogoods(p)) {
    uint32_t id = store.record(std::move(lits), NogoodOrigin::Static);
    ASSERT_FALSE(prop.attach(id).has_value());
  }
  PropagationResult r = prop.propagate();
  ASSERT_FALSE(r.conflict);
  // U = {a, b} found once; the loop nogood {T a} falsifies a, unit
  // propagation over the completion then falsifies b and both bodies
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], (std::vector<Var>{0, 1}));
  EXPECT_EQ(trail.value(0), VarValue::False);
  EXPECT_EQ(trail.value(1), VarValue::False);
  EXPECT_TRUE(trail.total());
  EXPECT_GE(prop.loop_nogoods_recorded(), 1u);
  // the recorded loop nogood is {T a} targeting the smallest atom id
  bool saw_loop = false;
  for (uint32_t id = 0; id < store.size(); ++id) {
    if (store[id].origin != NogoodOrigin::Loop) continue;
    saw_loop = true;
    EXPECT_EQ(store[id].lits, (std::vector<Lit>{Lit::T(0)}));
  }
  EXPECT_TRUE(saw_loop);
}

TEST(Propagate, TightProgramsSkipUnfoundedChecks) {
  Program p = testsupport::make_program("a :- not b.\nb :- not a.\nc :- a.\n");
  ASSERT_TRUE(p.tight);
  NogoodStore store(p.num_vars());
  Trail trail(p.num_vars());
  int ufs_calls = 0;
  SolverHooks hooks;
  hooks.on_ufs_check = [&] { ++ufs_calls; };
  Propagator prop(&p, store, trail, &hooks);
  for (auto& lits : completion_nogoods(p)) {
    uint32_t id = store.record(std::move(lits), NogoodOrigin::Static);
    prop.attach(id);
  }
  prop.propagate();
  trail.decide(Lit::F(0));
  prop.propagate();
  EXPECT_EQ(ufs_calls, 0);
  EXPECT_EQ(prop.loop_nogoods_recorded(), 0u);
}

TEST(Propagate, ConflictStopsBeforeFurtherAssignments) {
  // deciding T 3 fires both T 0 and T 1, which violates {T 0, T 1}; the
  // also-unit {T 0, F 2} must not fire once the violation is seen
  NogoodStore store(4);
  Trail trail(4);
  Propagator prop(nullptr, store, trail, nullptr);
  uint32_t violated = store.record({Lit::T(0), Lit::T(1)}, NogoodOrigin::Static);
  prop.attach(violated);
  prop.attach(store.record({Lit::T(0), Lit::F(2)}, NogoodOrigin::Static));
  prop.attach(store.record({Lit::T(3), Lit::F(0)}, NogoodOrigin::Static));
  prop.attach(store.record({Lit::T(3), Lit::F(1)}, NogoodOrigin::Static));
  trail.decide(Lit::T(3));
  PropagationResult r = prop.propagate();
  ASSERT_TRUE(r.conflict);
  EXPECT_EQ(r.violated_id, violated);
  EXPECT_FALSE(trail.assigned(2));
}

// At every propagation fixpoint during full solver runs, no stored nogood is
// unit-resulting or violated; restarts and deletion stress the watch scheme.
TEST(Propagate, FixpointSoundAcrossFullSolves) {
  SplitMix64 gen(173);
  uint64_t fixpoints = 0;
  for (int round = 0; round < 500; ++round) {
    Program p = parse_program(testsupport::random_program_text(gen));
    for (int variant = 0; variant < 3; ++variant) {
      SolverConfig cfg;
      cfg.heuristic = variant == 0 ? HeuristicKind::First : HeuristicKind::Lex;
      if (variant == 1) cfg.restarts = {true, 1.0, 1.2};
      if (variant == 2) cfg.deletion = {true, 2};
      Solver solver(p, cfg);
      solver.hooks.on_propagation_fixpoint = [&] {
        ++fixpoints;
        for (uint32_t id = 0; id < solver.store().size(); ++id) {
          if (solver.store()[id].deleted) continue;
          UnitResult u = unit_literal(solver.store()[id], solver.trail());
          ASSERT_NE(u.kind, UnitResult::Unit) << "nogood " << id;
          ASSERT_NE(u.kind, UnitResult::Violated) << "nogood " << id;
        }
      };
      solver.solve();
    }
  }
  EXPECT_GT(fixpoints, 1000u);
}

TEST(Propagate, RetainedUnfoundedSetIsFilteredBeforeNewCheck) {
  // two separate loops; falsifying the first must finish before the second
  // unfounded set is determined
  Program p = testsupport::make_program(
      "a :- b.\nb :- a.\nc :- d.\nd :- c.\n");
  NogoodStore store(p.num_vars());
  Trail trail(p.num_vars());
  std::vector<std::vector<Var>> found;
  SolverHooks hooks;
  hooks.on_unfounded_set = [&](const std::vector<Var>& u) { found.push_back(u); };
  Propagator prop(&p, store, trail, &hooks);
  for (auto& lits : completion_nogoods(p)) {
    uint32_t id = store.record(std::move(lits), NogoodOrigin::Static);
    prop.attach(id);
  }
  ASSERT_FALSE(prop.propagate().conflict);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[0], (std::vector<Var>{0, 1}));
  EXPECT_EQ(found[1], (std::vector<Var>{2, 3}));
  EXPECT_TRUE(trail.total());
}

}  // namespace
