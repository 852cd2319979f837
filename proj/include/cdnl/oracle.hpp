#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "cdnl/contract.hpp"
#include "cdnl/literal.hpp"
#include "cdnl/nogoods.hpp"
#include "cdnl/program.hpp"

namespace cdnl::oracle {

// Brute-force reference semantics for tests: answer sets by reduct
// enumeration, completion models by assignment enumeration, nogood
// entailment. Deliberately unindexed and slow.

struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr uint32_t kDefaultAtomBound = 20;

namespace detail {

// Least model of the positive rules (neg already filtered out), naive
// iteration to fixpoint. Rules given as (head, pos-atom mask).
inline uint32_t least_model(const std::vector<std::pair<Var, uint32_t>>& rules) {
  uint32_t model = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [head, pos] : rules) {
      if ((model & (1u << head)) != 0) continue;
      if ((pos & ~model) != 0) continue;
      model |= 1u << head;
      changed = true;
    }
  }
  return model;
}

inline std::vector<Var> mask_to_atoms(uint32_t mask, uint32_t n) {
  std::vector<Var> out;
  for (Var a = 0; a < n; ++a)
    if (mask & (1u << a)) out.push_back(a);
  return out;
}

}  // namespace detail

// All answer sets: X is one iff X equals the least model of the reduct
// (rules whose negative body avoids X, negative literals dropped).
inline std::vector<std::vector<Var>> answer_sets(
    const Program& prog, uint32_t atom_bound = kDefaultAtomBound) {
  uint32_t n = prog.num_atoms();
  if (n > atom_bound) throw BoundExceeded("too many atoms for the oracle");
  std::vector<std::tuple<Var, uint32_t, uint32_t>> rules;  // head, pos, neg masks
  for (const Rule& r : prog.rules) {
    uint32_t pos = 0, neg = 0;
    for (Var p : prog.bodies[r.body].pos) pos |= 1u << p;
    for (Var p : prog.bodies[r.body].neg) neg |= 1u << p;
    rules.emplace_back(r.head, pos, neg);
  }
  std::vector<std::vector<Var>> out;
  for (uint64_t x = 0; x < (1ull << n); ++x) {
    uint32_t mask = static_cast<uint32_t>(x);
    std::vector<std::pair<Var, uint32_t>> reduct;
    for (const auto& [head, pos, neg] : rules)
      if ((neg & mask) == 0) reduct.emplace_back(head, pos);
    if (detail::least_model(reduct) == mask)
      out.push_back(detail::mask_to_atoms(mask, n));
  }
  return out;
}

// Total assignment over atoms and bodies induced by an answer set: an atom is
// true iff in x; a body is true iff its positive part is inside x and its
// negative part misses x. Indexed by variable.
inline std::vector<bool> induced_solution(const Program& prog,
                                          const std::vector<Var>& x) {
  std::vector<bool> truth(prog.num_vars(), false);
  for (Var a : x) truth[a] = true;
  for (uint32_t b = 0; b < prog.num_bodies(); ++b) {
    const Body& body = prog.bodies[b];
    bool holds = true;
    for (Var p : body.pos)
      if (!truth[p]) {
        holds = false;
        break;
      }
    if (holds)
      for (Var p : body.neg)
        if (truth[p]) {
          holds = false;
          break;
        }
    truth[prog.body_var(b)] = holds;
  }
  return truth;
}

inline bool holds_in(const std::vector<Lit>& nogood, const std::vector<bool>& truth) {
  for (Lit l : nogood)
    if (truth[l.var()] != l.positive()) return false;
  return true;  // every literal matches: the nogood is violated
}

// True iff no answer set's induced solution contains the nogood.
inline bool entails(const Program& prog, const std::vector<Lit>& nogood,
                    uint32_t atom_bound = kDefaultAtomBound) {
  for (const auto& x : answer_sets(prog, atom_bound)) {
    if (holds_in(nogood, induced_solution(prog, x))) return false;
  }
  return true;
}

namespace detail {

// Atom projections of all total assignments over atoms+bodies solving the
// nogood set; duplicates preserved so callers can check uniqueness.
inline std::vector<std::vector<Var>> solution_projections(
    const Program& prog, const std::vector<std::vector<Lit>>& nogoods) {
  uint32_t nv = prog.num_vars();
  CDNL_REQUIRE(nv < 26, "assignment enumeration bound");
  std::vector<std::vector<Var>> out;
  for (uint64_t bits = 0; bits < (1ull << nv); ++bits) {
    std::vector<bool> truth(nv);
    for (uint32_t v = 0; v < nv; ++v) truth[v] = (bits >> v) & 1;
    bool solution = true;
    for (const auto& ng : nogoods)
      if (holds_in(ng, truth)) {
        solution = false;
        break;
      }
    if (!solution) continue;
    std::vector<Var> atoms;
    for (Var a = 0; a < prog.num_atoms(); ++a)
      if (truth[a]) atoms.push_back(a);
    out.push_back(std::move(atoms));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Atom projections of the solutions of the completion nogoods alone
// (classical models of the completion).
inline std::vector<std::vector<Var>> completion_models(const Program& prog) {
  return detail::solution_projections(prog, completion_nogoods(prog));
}

// Atom projections of the solutions of completion plus the loop nogoods of
// every nonempty atom subset, fully materialized.
inline std::vector<std::vector<Var>> completion_loop_models(const Program& prog) {
  std::vector<std::vector<Lit>> nogoods = completion_nogoods(prog);
  uint32_t n = prog.num_atoms();
  CDNL_REQUIRE(n < 16, "loop materialization bound");
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Var> u = detail::mask_to_atoms(mask, n);
    for (Var target : u) nogoods.push_back(loop_nogood(u, prog, target));
  }
  return detail::solution_projections(prog, nogoods);
}

}  // namespace cdnl::oracle
