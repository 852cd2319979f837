#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cdnl/contract.hpp"
#include "cdnl/heuristics.hpp"
#include "cdnl/hooks.hpp"
#include "cdnl/nogoods.hpp"
#include "cdnl/trail.hpp"

namespace cdnl {

using VarNamer = std::function<std::string(Var)>;

inline std::string format_lit(Lit l, const VarNamer& names) {
  return (l.positive() ? "T " : "F ") + names(l.var());
}

struct AnalyzeResult {
  std::vector<Lit> nogood;   // ascending trail position; last literal is the UIP
  uint32_t backjump_level;   // max level of the non-UIP literals, 0 if none
  uint32_t resolution_steps;
  Lit uip;                   // trail literal; unique nogood literal at conflict_level
  uint32_t conflict_level;   // level the resolution ran at
  bool level_aware;          // false iff the violated nogood already held a UIP
};

// Conflict graph extracted by one analysis run: one reason per implied
// literal along the traversed cone, the conflicting pair, and the derived
// cut. Text form, one edge per line `src -> dst [#id]`, with header lines
// for the levels and the cut; decision literals carry a trailing '*'.
struct ConflictGraph {
  struct Edge {
    Lit src, dst;
    uint32_t nogood_id;
  };
  std::vector<Edge> edges;
  Lit conflict_lit;            // trail side of the conflicting pair
  Lit conflict_opp;            // complement node (not on the trail)
  Lit uip;
  std::vector<Lit> cut;        // reason-side frontier = derived nogood
  bool level_aware = false;
  std::vector<Lit> nodes;      // trail literals, ascending position
  std::vector<uint32_t> node_levels;
  std::vector<bool> node_is_decision;

  std::string to_text(const VarNamer& names) const {
    std::string out = "conflict-graph\n";
    out += "level-aware: ";
    out += level_aware ? "true" : "false";
    out += "\n";
    out += "conflict: " + format_lit(conflict_lit, names) + ", " +
           format_lit(conflict_opp, names) + "\n";
    out += "uip: " + format_lit(uip, names) + "\n";
    out += "cut:";
    for (size_t i = 0; i < cut.size(); ++i)
      out += (i ? ", " : " ") + format_lit(cut[i], names);
    out += "\n";
    uint32_t max_level = 0;
    for (uint32_t lv : node_levels) max_level = std::max(max_level, lv);
    for (uint32_t lv = 0; lv <= max_level; ++lv) {
      std::string line = "level " + std::to_string(lv) + ":";
      bool any = false;
      for (size_t i = 0; i < nodes.size(); ++i) {
        if (node_levels[i] != lv) continue;
        line += (any ? ", " : " ") + format_lit(nodes[i], names);
        if (node_is_decision[i]) line += "*";
        any = true;
      }
      if (!any) continue;
      out += line + "\n";
    }
    for (const Edge& e : edges)
      out += format_lit(e.src, names) + " -> " + format_lit(e.dst, names) + " [#" +
             std::to_string(e.nogood_id) + "]\n";
    return out;
  }
};

// All antecedents of an implied trail literal sigma: stored nogoods that
// contain ~sigma and whose remaining literals were all assigned before
// sigma, i.e. the nogoods that were unit-resulting for sigma right before it
// entered the assignment. Ascending registration order.
inline std::vector<uint32_t> antecedents(Lit sigma, const NogoodStore& store,
                                         const Trail& t) {
  CDNL_REQUIRE(t.is_true(sigma), "antecedents of a literal not on the trail");
  uint32_t sigma_pos = t.position(sigma.var());
  std::vector<uint32_t> out;
  for (uint32_t id : store.occur(~sigma)) {
    if (store[id].deleted) continue;
    bool ok = true;
    for (Lit l : store[id].lits) {
      if (l == ~sigma) continue;
      if (!t.is_true(l) || t.position(l.var()) >= sigma_pos) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(id);
  }
  return out;
}

// First-UIP conflict resolution. Starting from a violated nogood, repeatedly
// take the literal added last to the assignment; while another literal
// shares its decision level, pick one of its antecedents with the given
// heuristic and resolve. Stops at the first unique implication point.
//
// bump_amount > 0 adds that much activity to every chosen resolvent.
// graph, when non-null, receives the traversed conflict graph.
inline AnalyzeResult analyze_conflict(uint32_t violated_id, NogoodStore& store,
                                      const Trail& t, HeuristicKind heuristic,
                                      SolverHooks* hooks = nullptr,
                                      double bump_amount = 0.0,
                                      ConflictGraph* graph = nullptr) {
  const Nogood& violated = store[violated_id];
  CDNL_REQUIRE(!violated.lits.empty(), "analysis of the empty nogood");
  for (Lit l : violated.lits)
    CDNL_REQUIRE(t.is_true(l), "analysis requires a violated nogood");

  std::vector<Lit> delta = violated.lits;
  auto last_lit = [&](const std::vector<Lit>& lits) {
    size_t best = 0;
    for (size_t i = 1; i < lits.size(); ++i)
      if (t.position(lits[i].var()) > t.position(lits[best].var())) best = i;
    return best;
  };

  size_t first_idx = last_lit(delta);
  Lit conflict_lit = delta[first_idx];
  uint32_t conflict_level = t.level(conflict_lit.var());
  bool level_aware = false;
  for (Lit l : delta)
    if (l != conflict_lit && t.level(l.var()) == conflict_level) level_aware = true;

  struct Step {
    Lit sigma;
    uint32_t antecedent;
  };
  std::vector<Step> steps;

  uint32_t resolution_steps = 0;
  for (;;) {
    size_t idx = last_lit(delta);
    Lit sigma = delta[idx];
    uint32_t k = 0;
    for (Lit l : delta)
      if (l != sigma) k = std::max(k, t.level(l.var()));
    if (k != t.level(sigma.var()) || delta.size() == 1) {
      if (delta.size() == 1) k = 0;
      // Done: sigma is the unique literal of its level in delta.
      std::sort(delta.begin(), delta.end(), [&](Lit a, Lit b) {
        return t.position(a.var()) < t.position(b.var());
      });
      AnalyzeResult result{std::move(delta), k, resolution_steps, sigma,
                           t.level(sigma.var()), level_aware};
      if (graph) {
        graph->level_aware = level_aware;
        graph->conflict_lit = conflict_lit;
        graph->conflict_opp = ~conflict_lit;
        graph->uip = sigma;
        graph->cut = result.nogood;
        for (Lit l : store[violated_id].lits)
          if (l != conflict_lit)
            graph->edges.push_back({l, ~conflict_lit, violated_id});
        for (const Step& s : steps)
          for (Lit l : store[s.antecedent].lits)
            if (l != ~s.sigma) graph->edges.push_back({l, s.sigma, s.antecedent});
        // node table: every trail literal mentioned, ascending position
        std::vector<Lit> nodes;
        for (const auto& e : graph->edges) {
          nodes.push_back(e.src);
          if (e.dst != graph->conflict_opp) nodes.push_back(e.dst);
        }
        nodes.push_back(conflict_lit);
        for (Lit l : result.nogood) nodes.push_back(l);
        std::sort(nodes.begin(), nodes.end(), [&](Lit a, Lit b) {
          return t.position(a.var()) < t.position(b.var());
        });
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        graph->nodes = nodes;
        for (Lit l : nodes) {
          graph->node_levels.push_back(t.level(l.var()));
          graph->node_is_decision.push_back(t.antecedent(l.var()) ==
                                            kAntecedentDecision);
        }
        std::sort(graph->edges.begin(), graph->edges.end(),
                  [&](const ConflictGraph::Edge& a, const ConflictGraph::Edge& b) {
                    auto pos = [&](Lit l) {
                      return l == graph->conflict_opp ? t.size()
                                                      : t.position(l.var());
                    };
                    if (pos(a.dst) != pos(b.dst)) return pos(a.dst) < pos(b.dst);
                    if (pos(a.src) != pos(b.src)) return pos(a.src) < pos(b.src);
                    return a.nogood_id < b.nogood_id;
                  });
      }
      return result;
    }

    std::vector<uint32_t> sigma_antecedents = antecedents(sigma, store, t);
    CDNL_REQUIRE(!sigma_antecedents.empty(),
                 "resolution required but no antecedent exists");
    uint32_t chosen = select_antecedent(heuristic, sigma, sigma_antecedents, t,
                                        store, t.current_level());
    if (hooks && hooks->on_selection)
      hooks->on_selection(SelectionEvent{sigma, sigma_antecedents, chosen,
                                         heuristic, t.current_level()});
    if (bump_amount > 0.0) store.bump_activity(chosen, bump_amount);
    if (graph) steps.push_back({sigma, chosen});

    // delta <- (delta \ {sigma}) u (antecedent \ {~sigma})
    delta.erase(delta.begin() + static_cast<ptrdiff_t>(idx));
    for (Lit l : store[chosen].lits) {
      if (l == ~sigma) continue;
      if (std::find(delta.begin(), delta.end(), l) == delta.end()) delta.push_back(l);
    }
    ++resolution_steps;
  }
}

}  // namespace cdnl
