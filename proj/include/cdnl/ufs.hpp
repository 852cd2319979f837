#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cdnl/contract.hpp"
#include "cdnl/nogoods.hpp"
#include "cdnl/program.hpp"
#include "cdnl/trail.hpp"

namespace cdnl {

inline constexpr uint32_t kNoSource = UINT32_MAX;

// Source-pointer state for unfounded-set detection, restricted to atoms in
// nontrivial strongly connected components of the positive dependency graph.
// source(a) is a currently non-false body externally supporting a; support
// chains inside an SCC stay acyclic because an atom is only (re)sourced once
// the in-SCC positive atoms of its source are sourced themselves.
class SourceState {
 public:
  explicit SourceState(const Program& prog)
      : prog_(&prog),
        source_(prog.num_atoms(), kNoSource),
        sourced_by_(prog.num_bodies()),
        pos_occur_(prog.num_atoms()),
        in_scope_(prog.num_atoms(), false),
        unsourced_flag_(prog.num_atoms(), false) {
    for (uint32_t b = 0; b < prog.num_bodies(); ++b)
      for (Var p : prog.bodies[b].pos) pos_occur_[p].push_back(b);
    for (Var a = 0; a < prog.num_atoms(); ++a) {
      if (!prog.scc_nontrivial[prog.scc_of[a]]) continue;
      in_scope_[a] = true;
      mark_unsourced(a);
    }
  }

  bool in_scope(Var atom) const { return in_scope_[atom]; }
  uint32_t source(Var atom) const { return source_[atom]; }
  bool sourced(Var atom) const { return source_[atom] != kNoSource; }
  const std::vector<Var>& unsourced() const { return unsourced_; }

  void set_source(Var atom, uint32_t body) {
    CDNL_REQUIRE(in_scope_[atom] && !sourced(atom), "bad set_source");
    source_[atom] = body;
    sourced_by_[body].push_back(atom);
    if (unsourced_flag_[atom]) {
      unsourced_flag_[atom] = false;
      unsourced_.erase(std::find(unsourced_.begin(), unsourced_.end(), atom));
    }
  }

  // Drops the sources relying on the given bodies, transitively within each
  // SCC; returns the atoms whose source was cleared (the re-check frontier).
  std::vector<Var> invalidate_sources(const std::vector<uint32_t>& false_bodies) {
    std::vector<Var> frontier;
    for (uint32_t b : false_bodies) {
      for (Var a : sourced_by_[b]) {
        source_[a] = kNoSource;
        mark_unsourced(a);
        frontier.push_back(a);
      }
      sourced_by_[b].clear();
    }
    // cascade: an atom whose source body positively contains a cleared atom
    // of its own SCC loses its source as well
    for (size_t head = 0; head < frontier.size(); ++head) {
      Var a = frontier[head];
      for (uint32_t b : pos_occur_[a]) {
        if (sourced_by_[b].empty()) continue;
        std::vector<Var> keep;
        for (Var dep : sourced_by_[b]) {
          if (prog_->scc_of[dep] == prog_->scc_of[a]) {
            source_[dep] = kNoSource;
            mark_unsourced(dep);
            frontier.push_back(dep);
          } else {
            keep.push_back(dep);
          }
        }
        sourced_by_[b] = std::move(keep);
      }
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
  }

  // Scans for sourced atoms whose source body became false and invalidates
  // them. Un-assignment after backjumping never invalidates a source, so an
  // eager scan at check time keeps the state consistent.
  std::vector<Var> refresh(const Trail& t) {
    std::vector<uint32_t> newly_false;
    for (uint32_t b = 0; b < prog_->num_bodies(); ++b) {
      if (sourced_by_[b].empty()) continue;
      if (t.value(prog_->body_var(b)) == VarValue::False) newly_false.push_back(b);
    }
    if (newly_false.empty()) return {};
    return invalidate_sources(newly_false);
  }

 private:
  void mark_unsourced(Var a) {
    if (unsourced_flag_[a]) return;
    unsourced_flag_[a] = true;
    unsourced_.push_back(a);
  }

  friend std::vector<Var> unfounded_set(const Program&, const Trail&, SourceState&);

  const Program* prog_;
  std::vector<uint32_t> source_;              // atom -> body id or kNoSource
  std::vector<std::vector<Var>> sourced_by_;  // body -> atoms sourced by it
  std::vector<std::vector<uint32_t>> pos_occur_;  // atom -> bodies with it positive
  std::vector<bool> in_scope_;
  std::vector<Var> unsourced_;  // persistent re-check frontier
  std::vector<bool> unsourced_flag_;
};

// Returns a nonempty set U of non-false atoms with all external bodies false,
// or the empty set if none exists. The result is confined to one nontrivial
// SCC; atoms in trivial SCCs are fully handled by the completion nogoods.
// Requires the unit-propagation fixpoint on the stored nogoods (a false atom
// then implies false bodies around it, which the re-sourcing below relies on).
inline std::vector<Var> unfounded_set(const Program& prog, const Trail& t,
                                      SourceState& state) {
  if (state.unsourced_.empty()) return {};
  std::sort(state.unsourced_.begin(), state.unsourced_.end());

  // Try to re-source frontier atoms: a gets body b if b is not false and
  // every in-SCC positive atom of b is sourced. Iterate to fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < state.unsourced_.size();) {
      Var a = state.unsourced_[i];
      if (t.value(a) == VarValue::False) {
        ++i;  // false atoms need no source; bodies through them are false
        continue;
      }
      uint32_t found = kNoSource;
      for (uint32_t b : prog.body_of[a]) {
        if (t.value(prog.body_var(b)) == VarValue::False) continue;
        bool supported = true;
        for (Var p : prog.bodies[b].pos) {
          if (prog.scc_of[p] == prog.scc_of[a] && !state.sourced(p)) {
            supported = false;
            break;
          }
        }
        if (supported) {
          found = b;
          break;
        }
      }
      if (found != kNoSource) {
        state.set_source(a, found);  // removes a from unsourced_
        changed = true;
      } else {
        ++i;
      }
    }
  }

  // First SCC (by index) with a non-false leftover wins.
  uint32_t best_scc = UINT32_MAX;
  for (Var a : state.unsourced_) {
    if (t.value(a) == VarValue::False) continue;
    best_scc = std::min(best_scc, prog.scc_of[a]);
  }
  if (best_scc == UINT32_MAX) return {};
  std::vector<Var> u;
  for (Var a : state.unsourced_)
    if (t.value(a) != VarValue::False && prog.scc_of[a] == best_scc) u.push_back(a);
  return u;  // ascending: unsourced_ was sorted
}

}  // namespace cdnl
