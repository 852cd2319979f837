#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cdnl/analyze.hpp"
#include "cdnl/contract.hpp"
#include "cdnl/heuristics.hpp"
#include "cdnl/hooks.hpp"
#include "cdnl/nogoods.hpp"
#include "cdnl/program.hpp"
#include "cdnl/propagate.hpp"
#include "cdnl/stats.hpp"
#include "cdnl/trail.hpp"
#include "cdnl/ufs.hpp"

namespace cdnl {

enum class SolveStatus : uint8_t { Sat, Unsat, Unknown };

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "SAT";
    case SolveStatus::Unsat: return "UNSAT";
    case SolveStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct RestartPolicy {
  bool enabled = false;
  double base = 100.0;
  double factor = 1.5;
};

struct DeletionPolicy {
  bool enabled = false;
  uint64_t max_recorded = 4000;
};

// Wall is real time; Virtual derives a deterministic pseudo-time from the
// work counters, so runs and limits reproduce exactly.
enum class TimeMode : uint8_t { Wall, Virtual };

struct SolverConfig {
  HeuristicKind heuristic = HeuristicKind::First;
  uint64_t seed = 0;  // reserved; the decision policy itself is deterministic
  RestartPolicy restarts;
  DeletionPolicy deletion;
  uint64_t max_conflicts = 0;  // 0 = unlimited
  double time_limit_s = 0.0;   // 0 = unlimited, checked at conflict boundaries
  TimeMode time_mode = TimeMode::Wall;
  std::vector<Lit> script;  // scripted decisions, consumed before the policy
  bool capture_first_conflict_graph = false;
  bool verify_model = true;  // re-check total assignments before reporting SAT
};

struct ScriptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unknown;
  // Program mode: visible true atoms (ascending = first-appearance order).
  // Nogood mode: all true variables.
  std::vector<Var> answer;
  ConflictStats stats;
  std::optional<ConflictGraph> first_conflict_graph;
};

// True iff the total assignment violates no stored nogood and, for non-tight
// programs, leaves no unfounded set. The main loop guarantees this; the check
// re-verifies it independently.
inline bool check_model(const Program& prog, const NogoodStore& store,
                        const Trail& trail) {
  for (uint32_t id = 0; id < store.size(); ++id) {
    const Nogood& n = store[id];
    if (n.deleted) continue;
    bool violated = true;
    for (Lit l : n.lits)
      if (!trail.is_true(l)) {
        violated = false;
        break;
      }
    if (violated) return false;
  }
  if (!prog.tight) {
    SourceState fresh(prog);
    if (!unfounded_set(prog, trail, fresh).empty()) return false;
  }
  return true;
}

// Conflict-driven nogood learning: propagate; on conflict analyze, record the
// derived nogood and backjump; on a total assignment return the true atoms;
// otherwise decide. Geometric restarts and activity-capped deletion of
// recorded nogoods are available behind the config.
class Solver {
 public:
  Solver(const Program& prog, SolverConfig config = {})
      : prog_(&prog),
        config_(std::move(config)),
        trail_(prog.num_vars()),
        store_(prog.num_vars()),
        var_activity_(prog.num_vars(), 0.0) {
    for (auto& lits : completion_nogoods(prog))
      store_.record(std::move(lits), NogoodOrigin::Static);
    static_count_ = store_.size();
  }

  // Plain nogood sets over num_vars variables (no program semantics).
  Solver(uint32_t num_vars, const std::vector<std::vector<Lit>>& input_nogoods,
         SolverConfig config = {})
      : prog_(nullptr),
        config_(std::move(config)),
        trail_(num_vars),
        store_(num_vars),
        var_activity_(num_vars, 0.0) {
    for (const auto& lits : input_nogoods) store_.record(lits, NogoodOrigin::Static);
    static_count_ = store_.size();
  }

  SolverHooks hooks;

  const NogoodStore& store() const { return store_; }
  const Trail& trail() const { return trail_; }
  const Program* program() const { return prog_; }
  double var_activity(Var v) const { return var_activity_[v]; }

  SolveOutcome solve() {
    started_ = std::chrono::steady_clock::now();
    SolveOutcome outcome;
    Propagator propagator(prog_, store_, trail_, &hooks);
    propagator_ = &propagator;

    SolveStatus status = run();

    outcome.status = status;
    outcome.stats = stats_;
    outcome.stats.propagations = propagator.propagations();
    outcome.stats.loop_nogoods = propagator.loop_nogoods_recorded();
    outcome.stats.elapsed_s =
        config_.time_mode == TimeMode::Virtual
            ? virtual_time(outcome.stats)
            : std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            started_)
                  .count();
    if (status == SolveStatus::Sat) outcome.answer = current_answer();
    outcome.first_conflict_graph = std::move(first_graph_);
    propagator_ = nullptr;
    return outcome;
  }

 private:
  static double virtual_time(const ConflictStats& s) {
    return 1e-6 * static_cast<double>(s.decisions + s.propagations + s.conflicts);
  }

  double elapsed_now() const {
    ConflictStats s = stats_;
    s.propagations = propagator_->propagations();
    if (config_.time_mode == TimeMode::Virtual) return virtual_time(s);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         started_)
        .count();
  }

  SolveStatus run() {
    if (store_.has_empty()) return SolveStatus::Unsat;

    // Unary inputs assign at level 0; a contradiction here refutes the input.
    for (uint32_t id = 0; id < static_count_; ++id) {
      if (auto violated = propagator_->attach(id)) {
        (void)violated;
        return SolveStatus::Unsat;
      }
    }

    double restart_threshold = config_.restarts.base;
    uint64_t conflicts_since_restart = 0;

    for (;;) {
      PropagationResult res = propagator_->propagate();
      if (res.conflict) {
        if (trail_.current_level() == 0) return SolveStatus::Unsat;

        ConflictGraph* graph_out = nullptr;
        ConflictGraph graph;
        if (config_.capture_first_conflict_graph && !first_graph_) graph_out = &graph;

        AnalyzeResult result =
            analyze_conflict(res.violated_id, store_, trail_, config_.heuristic,
                             &hooks, nogood_activity_inc_, graph_out);
        if (graph_out) first_graph_ = std::move(graph);
        if (hooks.on_conflict)
          hooks.on_conflict(
              ConflictEvent{result, trail_.current_level(), res.violated_id});
        stats_.record_conflict(result, trail_.current_level());

        // variable activity: bump the derived nogood's variables, decay the rest
        for (Lit l : result.nogood) bump_var(l.var());
        var_activity_inc_ /= kActivityDecay;
        if (var_activity_inc_ > kActivityRescaleLimit) rescale_var_activity();

        uint32_t id = store_.record(result.nogood, NogoodOrigin::Conflict);
        store_.bump_activity(id, nogood_activity_inc_);
        nogood_activity_inc_ /= kActivityDecay;
        if (nogood_activity_inc_ > kActivityRescaleLimit) {
          store_.decay_activities(1.0 / kActivityRescaleLimit);
          nogood_activity_inc_ /= kActivityRescaleLimit;
        }
        if (hooks.on_record) hooks.on_record(id);

        trail_.backjump(result.backjump_level);
        propagator_->on_backjump();
        if (auto violated = propagator_->attach(id)) {
          (void)violated;  // asserting nogood cannot be violated after backjump
          CDNL_REQUIRE(false, "recorded conflict nogood violated after backjump");
        }

        ++conflicts_since_restart;
        if (config_.max_conflicts && stats_.conflicts >= config_.max_conflicts)
          return SolveStatus::Unknown;
        if (config_.time_limit_s > 0 && elapsed_now() > config_.time_limit_s)
          return SolveStatus::Unknown;
        if (config_.deletion.enabled) maybe_reduce();
        if (config_.restarts.enabled &&
            conflicts_since_restart >=
                static_cast<uint64_t>(restart_threshold)) {
          trail_.backjump(0);
          propagator_->on_backjump();
          restart_threshold *= config_.restarts.factor;
          conflicts_since_restart = 0;
          ++stats_.restarts;
        }
        continue;
      }

      if (trail_.total()) {
        if (config_.verify_model) {
          if (prog_) {
            CDNL_REQUIRE(check_model(*prog_, store_, trail_),
                         "total assignment failed the model check");
          } else {
            for (uint32_t id = 0; id < store_.size(); ++id)
              if (!store_[id].deleted)
                CDNL_REQUIRE(
                    unit_literal(store_[id], trail_).kind != UnitResult::Violated,
                    "total assignment violates a stored nogood");
          }
        }
        return SolveStatus::Sat;
      }

      decide();
    }
  }

  void decide() {
    if (script_cursor_ < config_.script.size()) {
      Lit l = config_.script[script_cursor_++];
      if (l.var() >= trail_.num_vars())
        throw ScriptError("scripted literal outside the vocabulary");
      if (trail_.assigned(l.var()))
        throw ScriptError("scripted literal already assigned");
      trail_.decide(l);
      ++stats_.decisions;
      return;
    }
    // highest activity, ties to the smallest variable id, sign F
    Var best = UINT32_MAX;
    double best_activity = -1.0;
    for (Var v = 0; v < trail_.num_vars(); ++v) {
      if (trail_.assigned(v)) continue;
      if (var_activity_[v] > best_activity) {
        best = v;
        best_activity = var_activity_[v];
      }
    }
    CDNL_REQUIRE(best != UINT32_MAX, "decision requested on a total assignment");
    trail_.decide(Lit::F(best));
    ++stats_.decisions;
  }

  void bump_var(Var v) {
    var_activity_[v] += var_activity_inc_;
    if (var_activity_[v] > kActivityRescaleLimit) rescale_var_activity();
  }

  void rescale_var_activity() {
    for (double& a : var_activity_) a /= kActivityRescaleLimit;
    var_activity_inc_ /= kActivityRescaleLimit;
  }

  // Deletes the lowest-activity half of the deletable recorded nogoods:
  // never static ones, unaries, or antecedents on the current trail.
  void maybe_reduce() {
    uint64_t recorded = 0;
    for (uint32_t id = static_count_; id < store_.size(); ++id)
      if (!store_[id].deleted) ++recorded;
    if (recorded <= config_.deletion.max_recorded) return;

    std::vector<bool> locked(store_.size(), false);
    for (uint32_t i = 0; i < trail_.size(); ++i) {
      int32_t ante = trail_.antecedent(trail_[i].var());
      if (ante >= 0) locked[static_cast<uint32_t>(ante)] = true;
    }
    std::vector<uint32_t> deletable;
    for (uint32_t id = static_count_; id < store_.size(); ++id) {
      const Nogood& n = store_[id];
      if (n.deleted || n.size() <= 1 || locked[id]) continue;
      deletable.push_back(id);
    }
    std::sort(deletable.begin(), deletable.end(), [&](uint32_t a, uint32_t b) {
      if (store_[a].activity != store_[b].activity)
        return store_[a].activity < store_[b].activity;
      return a < b;
    });
    size_t to_delete = (deletable.size() + 1) / 2;
    for (size_t i = 0; i < to_delete; ++i) store_.remove(deletable[i]);
  }

  std::vector<Var> current_answer() const {
    std::vector<Var> answer;
    if (prog_) {
      for (Var a = 0; a < prog_->num_atoms(); ++a)
        if (trail_.value(a) == VarValue::True && !prog_->atoms[a].hidden)
          answer.push_back(a);
    } else {
      for (Var v = 0; v < trail_.num_vars(); ++v)
        if (trail_.value(v) == VarValue::True) answer.push_back(v);
    }
    return answer;
  }

  static constexpr double kActivityDecay = 0.95;
  static constexpr double kActivityRescaleLimit = 1e100;

  const Program* prog_;
  SolverConfig config_;
  Trail trail_;
  NogoodStore store_;
  Propagator* propagator_ = nullptr;
  ConflictStats stats_;
  std::vector<double> var_activity_;
  double var_activity_inc_ = 1.0;
  double nogood_activity_inc_ = 1.0;
  uint32_t static_count_ = 0;
  size_t script_cursor_ = 0;
  std::optional<ConflictGraph> first_graph_;
  std::chrono::steady_clock::time_point started_;
};

}  // namespace cdnl
