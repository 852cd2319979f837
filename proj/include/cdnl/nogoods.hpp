#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "cdnl/contract.hpp"
#include "cdnl/literal.hpp"
#include "cdnl/program.hpp"
#include "cdnl/trail.hpp"

namespace cdnl {

enum class NogoodOrigin : uint8_t {
  Static,    // completion nogoods / constraint-mode input
  Conflict,  // recorded by conflict analysis
  Loop       // recorded by unfounded-set handling
};

inline constexpr uint32_t kLevelUnset = std::numeric_limits<uint32_t>::max();

// A nogood is a set of literals no solution may wholly contain.
struct Nogood {
  std::vector<Lit> lits;
  NogoodOrigin origin = NogoodOrigin::Static;
  double activity = 0.0;
  // Smallest decision level at which this nogood has ever fired as unit.
  uint32_t min_implied_level = kLevelUnset;
  bool deleted = false;
  // Watched positions into lits (meaningful for size >= 2 once seated).
  uint32_t watch[2] = {0, 1};

  uint32_t size() const { return static_cast<uint32_t>(lits.size()); }
};

// Pool of nogoods with complete occurrence lists (every stored nogood is
// reachable from each of its literals) and per-literal watcher lists.
// Registration indices are monotone and never reused.
class NogoodStore {
 public:
  explicit NogoodStore(uint32_t num_vars)
      : num_vars_(num_vars), occur_(2 * num_vars), watchers_(2 * num_vars) {}

  uint32_t num_vars() const { return num_vars_; }
  uint32_t size() const { return static_cast<uint32_t>(pool_.size()); }
  const Nogood& operator[](uint32_t id) const { return pool_[id]; }
  Nogood& operator[](uint32_t id) { return pool_[id]; }
  bool has_empty() const { return has_empty_; }

  // Stores the nogood and indexes it; watches are seated separately.
  // Recorded nogoods are not deduplicated. A nogood carrying both signs of a
  // variable is accepted but inert: bodies with an atom in both their
  // positive and negative part produce one (it can never be violated).
  uint32_t record(std::vector<Lit> lits, NogoodOrigin origin) {
    for (size_t i = 0; i < lits.size(); ++i)
      for (size_t j = i + 1; j < lits.size(); ++j)
        CDNL_REQUIRE(lits[i] != lits[j], "duplicate literal in nogood");
    uint32_t id = static_cast<uint32_t>(pool_.size());
    if (lits.empty()) has_empty_ = true;  // unsatisfiability witness
    for (Lit l : lits) occur_[l.code()].push_back(id);
    Nogood n;
    n.lits = std::move(lits);
    n.origin = origin;
    pool_.push_back(std::move(n));
    return id;
  }

  // Nogood ids containing this literal, ascending registration order.
  const std::vector<uint32_t>& occur(Lit l) const { return occur_[l.code()]; }

  const std::vector<uint32_t>& watchers(Lit l) const { return watchers_[l.code()]; }
  std::vector<uint32_t>& watchers(Lit l) { return watchers_[l.code()]; }

  // Seats the two watches at the given positions and registers watcher
  // entries. Requires size >= 2.
  void watch_at(uint32_t id, uint32_t i, uint32_t j) {
    Nogood& n = pool_[id];
    CDNL_REQUIRE(n.size() >= 2 && i != j, "bad watch positions");
    n.watch[0] = i;
    n.watch[1] = j;
    watchers_[n.lits[i].code()].push_back(id);
    watchers_[n.lits[j].code()].push_back(id);
  }

  void bump_activity(uint32_t id, double amount) { pool_[id].activity += amount; }

  // Multiplies every activity by factor (also serves as the rescale step of
  // the growing-increment scheme).
  void decay_activities(double factor) {
    for (Nogood& n : pool_)
      if (!n.deleted) n.activity *= factor;
  }

  // Removes a recorded nogood from the pool and all indices. The id stays
  // burned (registration indices are never reused).
  void remove(uint32_t id) {
    Nogood& n = pool_[id];
    CDNL_REQUIRE(!n.deleted, "double delete");
    n.deleted = true;
    for (Lit l : n.lits) erase_id(occur_[l.code()], id);
    erase_id(watchers_[n.lits[n.watch[0]].code()], id);
    erase_id(watchers_[n.lits[n.watch[1]].code()], id);
  }

 private:
  static void erase_id(std::vector<uint32_t>& v, uint32_t id) {
    v.erase(std::remove(v.begin(), v.end(), id), v.end());
  }

  uint32_t num_vars_;
  std::vector<Nogood> pool_;
  std::vector<std::vector<uint32_t>> occur_;
  std::vector<std::vector<uint32_t>> watchers_;
  bool has_empty_ = false;
};

// Completion nogoods. For a body beta = {p_1..p_m, not p_{m+1}..not p_n}:
//
//   { T p_1, ..., T p_m, F p_{m+1}, ..., F p_n, F beta }
//   { F p_i, T beta }            for each positive p_i
//   { T p_j, T beta }            for each negative p_j
//
// and for an atom p with body(p) = {beta_1..beta_k}:
//
//   { F beta_1, ..., F beta_k, T p }
//   { T beta_i, F p }            for each beta_i
//
// An atom without bodies yields just { T p }.
inline std::vector<std::vector<Lit>> completion_nogoods(const Program& prog) {
  std::vector<std::vector<Lit>> out;
  for (uint32_t b = 0; b < prog.num_bodies(); ++b) {
    const Body& body = prog.bodies[b];
    Lit body_true = Lit::T(prog.body_var(b));
    std::vector<Lit> forward;
    forward.reserve(body.pos.size() + body.neg.size() + 1);
    for (Var p : body.pos) forward.push_back(Lit::T(p));
    for (Var p : body.neg) forward.push_back(Lit::F(p));
    forward.push_back(~body_true);
    out.push_back(std::move(forward));
    for (Var p : body.pos) out.push_back({Lit::F(p), body_true});
    for (Var p : body.neg) out.push_back({Lit::T(p), body_true});
  }
  for (Var p = 0; p < prog.num_atoms(); ++p) {
    std::vector<Lit> support;
    support.reserve(prog.body_of[p].size() + 1);
    for (uint32_t b : prog.body_of[p]) support.push_back(Lit::F(prog.body_var(b)));
    support.push_back(Lit::T(p));
    out.push_back(std::move(support));
    for (uint32_t b : prog.body_of[p])
      out.push_back({Lit::T(prog.body_var(b)), Lit::F(p)});
  }
  return out;
}

// External bodies of an atom set u: bodies of rules with head in u whose
// positive part avoids u. Ascending body ids.
inline std::vector<uint32_t> external_bodies(const std::vector<Var>& u,
                                             const Program& prog) {
  std::vector<bool> in_u(prog.num_atoms(), false);
  for (Var a : u) in_u[a] = true;
  std::vector<uint32_t> out;
  for (const Rule& r : prog.rules) {
    if (!in_u[r.head]) continue;
    const Body& b = prog.bodies[r.body];
    bool internal = false;
    for (Var p : b.pos)
      if (in_u[p]) {
        internal = true;
        break;
      }
    if (!internal) out.push_back(r.body);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Loop nogood for target in u: { F beta_1, ..., F beta_k, T target } over
// the external bodies of u. With no external bodies this is { T target }.
inline std::vector<Lit> loop_nogood(const std::vector<Var>& u, const Program& prog,
                                    Var target) {
  std::vector<Lit> lits;
  for (uint32_t b : external_bodies(u, prog)) lits.push_back(Lit::F(prog.body_var(b)));
  lits.push_back(Lit::T(target));
  return lits;
}

// Classification of a nogood against the current assignment.
struct UnitResult {
  enum Kind { Unit, Violated, Unresolved } kind;
  Lit unit_lit;  // the single unassigned literal when kind == Unit
};

inline UnitResult unit_literal(const Nogood& n, const Trail& t) {
  uint32_t unassigned = 0;
  Lit candidate;
  for (Lit l : n.lits) {
    if (t.is_true(l)) continue;
    if (t.is_false(l)) return {UnitResult::Unresolved, Lit()};  // cannot be violated
    if (++unassigned > 1) return {UnitResult::Unresolved, Lit()};
    candidate = l;
  }
  if (unassigned == 0) return {UnitResult::Violated, Lit()};
  return {UnitResult::Unit, candidate};
}

}  // namespace cdnl
