#pragma once

#include <string>
#include <vector>

#include "cdnl/program.hpp"
#include "cdnl/rng.hpp"

namespace cdnl {

// Stable textual form of a program. Rules with a hidden head render back as
// integrity constraints (the encoding literal is stripped), so a re-parse
// reproduces the same visible semantics.
inline std::string render_program(const Program& prog,
                                  const std::vector<size_t>* rule_order = nullptr,
                                  SplitMix64* lit_shuffler = nullptr) {
  std::string out;
  std::vector<size_t> order;
  if (rule_order) {
    order = *rule_order;
  } else {
    order.resize(prog.rules.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  }
  for (size_t idx : order) {
    const Rule& r = prog.rules[idx];
    const Body& b = prog.bodies[r.body];
    bool constraint = prog.atoms[r.head].hidden;
    std::vector<std::string> lits;
    for (Var p : b.pos) lits.push_back(prog.atoms[p].name);
    for (Var p : b.neg) {
      if (constraint && p == r.head) continue;  // strip the encoding literal
      lits.push_back("not " + prog.atoms[p].name);
    }
    if (lit_shuffler) lit_shuffler->shuffle(lits);
    if (constraint) {
      out += ":- ";
    } else {
      out += prog.atoms[r.head].name;
      if (!lits.empty()) out += " :- ";
    }
    for (size_t i = 0; i < lits.size(); ++i) {
      if (i) out += ", ";
      out += lits[i];
    }
    out += ".\n";
  }
  return out;
}

// Seeded semantic-preserving shuffle: permutes the rule order and each rule's
// body literal order, then re-parses, which also permutes atom/body ids and
// registration order downstream.
inline Program shuffle_instance(const Program& prog, uint64_t seed) {
  SplitMix64 gen(seed);
  std::vector<size_t> order(prog.rules.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  gen.shuffle(order);
  return parse_program(render_program(prog, &order, &gen));
}

}  // namespace cdnl
