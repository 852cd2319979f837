#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "cdnl/contract.hpp"
#include "cdnl/hooks.hpp"
#include "cdnl/nogoods.hpp"
#include "cdnl/program.hpp"
#include "cdnl/trail.hpp"
#include "cdnl/ufs.hpp"

namespace cdnl {

struct PropagationResult {
  bool conflict = false;
  uint32_t violated_id = 0;
};

// Unit propagation to fixpoint over all stored nogoods, interleaved with
// unfounded-set checks for non-tight programs. Watched literals: a nogood
// watches two of its literals; when a watched literal becomes true and no
// non-true replacement exists, the other watch forces its complement, or the
// nogood is violated. Propagation stops at the first violated nogood.
class Propagator {
 public:
  // prog may be null (plain nogood sets, no unfounded-set handling).
  Propagator(const Program* prog, NogoodStore& store, Trail& trail,
             SolverHooks* hooks = nullptr)
      : prog_(prog), store_(&store), trail_(&trail), hooks_(hooks) {
    if (prog_ && !prog_->tight)
      source_state_ = std::make_unique<SourceState>(*prog_);
  }

  uint64_t propagations() const { return propagations_; }
  uint64_t loop_nogoods_recorded() const { return loop_nogoods_; }
  SourceState* source_state() { return source_state_.get(); }

  // Indexes a freshly recorded nogood against the current assignment: seats
  // watches, fires it when unit, reports it when violated.
  std::optional<uint32_t> attach(uint32_t id) {
    Nogood& n = (*store_)[id];
    if (n.lits.empty()) return id;  // empty nogood: nothing can satisfy it
    if (n.size() == 1) {
      unaries_.push_back(id);
      return fire_unary(id);
    }
    // Watch the two literals that become non-true last: non-true ones first,
    // then by descending trail position. Keeps unit detection exact across
    // backjumps.
    auto key = [&](Lit l) -> uint64_t {
      return trail_->is_true(l) ? trail_->position(l.var())
                                : std::numeric_limits<uint64_t>::max();
    };
    uint32_t w0 = 0, w1 = 1;
    if (key(n.lits[w1]) > key(n.lits[w0])) std::swap(w0, w1);
    for (uint32_t i = 2; i < n.size(); ++i) {
      if (key(n.lits[i]) > key(n.lits[w0])) {
        w1 = w0;
        w0 = i;
      } else if (key(n.lits[i]) > key(n.lits[w1])) {
        w1 = i;
      }
    }
    store_->watch_at(id, w0, w1);
    uint32_t non_true = 0;
    Lit pending;
    for (Lit l : n.lits) {
      if (trail_->is_true(l)) continue;
      ++non_true;
      pending = l;
    }
    if (non_true == 0) return id;  // violated as recorded
    if (non_true == 1 && !trail_->is_false(pending)) {
      fire(~pending, id);
    }
    return std::nullopt;
  }

  // Must be called after the trail was rolled back. Clamps the queue head:
  // literals that survive the rollback but were not yet propagated (a level-0
  // assertion right before a restart) stay queued.
  void on_backjump() {
    qhead_ = std::min(qhead_, static_cast<size_t>(trail_->size()));
  }

  PropagationResult propagate() {
    pending_ufs_.clear();  // each call starts with no retained unfounded set
    for (;;) {
      if (auto c = fire_pending_unaries()) return {true, *c};
      if (auto c = unit_propagate()) return {true, *c};
      if (!prog_ || prog_->tight) break;

      // Retain the last unfounded set until all of it is falsified, then
      // look for the next one.
      filter_pending();
      if (pending_ufs_.empty()) {
        source_state_->refresh(*trail_);
        if (hooks_ && hooks_->on_ufs_check) hooks_->on_ufs_check();
        pending_ufs_ = unfounded_set(*prog_, *trail_, *source_state_);
        if (pending_ufs_.empty()) break;
        if (hooks_ && hooks_->on_unfounded_set) hooks_->on_unfounded_set(pending_ufs_);
      }
      Var target = pending_ufs_.front();  // smallest atom id
      uint32_t id =
          store_->record(loop_nogood(pending_ufs_, *prog_, target), NogoodOrigin::Loop);
      ++loop_nogoods_;
      if (hooks_ && hooks_->on_record) hooks_->on_record(id);
      if (auto c = attach(id)) return {true, *c};
    }
    if (hooks_ && hooks_->on_propagation_fixpoint) hooks_->on_propagation_fixpoint();
    return {};
  }

 private:
  void fire(Lit l, uint32_t antecedent_id) {
    trail_->assign(l, static_cast<int32_t>(antecedent_id));
    Nogood& n = (*store_)[antecedent_id];
    n.min_implied_level = std::min(n.min_implied_level, trail_->current_level());
    ++propagations_;
  }

  std::optional<uint32_t> fire_unary(uint32_t id) {
    const Nogood& n = (*store_)[id];
    Lit l = n.lits[0];
    if (trail_->is_true(l)) return id;  // violated
    if (!trail_->assigned(l.var())) fire(~l, id);
    return std::nullopt;
  }

  // Unary nogoods carry no watches; re-fire any that became unassigned after
  // a backjump (dynamically recorded ones in particular).
  std::optional<uint32_t> fire_pending_unaries() {
    for (uint32_t id : unaries_) {
      if ((*store_)[id].deleted) continue;
      if (auto c = fire_unary(id)) return c;
    }
    return std::nullopt;
  }

  std::optional<uint32_t> unit_propagate() {
    while (qhead_ < trail_->size()) {
      Lit just_true = (*trail_)[qhead_++];
      auto& watch_list = store_->watchers(just_true);
      for (size_t i = 0; i < watch_list.size();) {
        uint32_t id = watch_list[i];
        Nogood& n = (*store_)[id];
        uint32_t w_this = n.lits[n.watch[0]] == just_true ? 0 : 1;
        Lit other = n.lits[n.watch[1 - w_this]];
        if (trail_->is_false(other)) {
          ++i;  // cannot be violated while the other watch is false
          continue;
        }
        // look for a non-true replacement watch
        uint32_t replacement = UINT32_MAX;
        for (uint32_t j = 0; j < n.size(); ++j) {
          if (j == n.watch[0] || j == n.watch[1]) continue;
          if (!trail_->is_true(n.lits[j])) {
            replacement = j;
            break;
          }
        }
        if (replacement != UINT32_MAX) {
          n.watch[w_this] = replacement;
          store_->watchers(n.lits[replacement]).push_back(id);
          watch_list[i] = watch_list.back();
          watch_list.pop_back();
          continue;
        }
        if (trail_->is_true(other)) return id;  // violated, stop immediately
        fire(~other, id);
        ++i;
      }
    }
    return std::nullopt;
  }

  void filter_pending() {
    if (pending_ufs_.empty()) return;
    std::vector<Var> keep;
    for (Var a : pending_ufs_)
      if (trail_->value(a) != VarValue::False) keep.push_back(a);
    pending_ufs_ = std::move(keep);
  }

  const Program* prog_;
  NogoodStore* store_;
  Trail* trail_;
  SolverHooks* hooks_;
  std::unique_ptr<SourceState> source_state_;
  std::vector<uint32_t> unaries_;
  std::vector<Var> pending_ufs_;
  size_t qhead_ = 0;
  uint64_t propagations_ = 0;
  uint64_t loop_nogoods_ = 0;
};

}  // namespace cdnl
