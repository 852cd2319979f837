#pragma once

// Shared corpus helpers: deterministic random programs, structured hand
// cases, and a driver fixture for the two-reasons nogood example.

#include <string>
#include <vector>

#include "cdnl/cdnl.hpp"

namespace cdnl::testsupport {

// Deterministic random ground programs, at oracle scale. The text form goes
// through the real parser so id assignment matches production use.
inline std::string random_program_text(SplitMix64& gen, uint32_t max_atoms = 6,
                                       uint32_t max_rules = 8) {
  static const char* kNames[] = {"a", "b", "c", "d", "e", "f"};
  uint32_t natoms = 1 + static_cast<uint32_t>(gen.below(max_atoms));
  uint32_t nrules = static_cast<uint32_t>(gen.below(max_rules + 1));
  std::string text;
  for (uint32_t i = 0; i < nrules; ++i) {
    bool constraint = gen.below(10) == 0;
    std::string head = kNames[gen.below(natoms)];
    uint32_t npos = static_cast<uint32_t>(gen.below(3));
    uint32_t nneg = static_cast<uint32_t>(gen.below(3));
    std::vector<std::string> lits;
    for (uint32_t j = 0; j < npos; ++j)
      lits.push_back(kNames[gen.below(natoms)]);
    for (uint32_t j = 0; j < nneg; ++j)
      lits.push_back(std::string("not ") + kNames[gen.below(natoms)]);
    if (constraint && lits.empty()) lits.push_back(kNames[gen.below(natoms)]);
    if (constraint)
      text += ":- ";
    else
      text += head + (lits.empty() ? "" : " :- ");
    for (size_t j = 0; j < lits.size(); ++j) {
      if (j) text += ", ";
      text += lits[j];
    }
    text += ".\n";
  }
  return text;
}

// Structured hand cases; each is a full program text.
inline std::vector<std::string> hand_cases() {
  return {
      "",                                            // empty program
      "a.\n",                                        // single fact
      "a :- a.\n",                                   // self-loop
      "a :- not a.\n",                               // self-blocked, no answer set
      "a :- not b.\nb :- not a.\n",                  // even negative loop
      "a :- b.\nb :- a.\n",                          // unsupported positive loop
      "a :- b.\nb :- a.\na :- not c.\nc :- not a.\n",
      "a :- b.\nb :- a.\n:- not a.\n",               // forced unsupported loop
      "a :- b, not c.\nb.\n",
      ":- a.\n",
      "a.\n:- a.\n",                                 // fact versus constraint
      "a :- b, not b.\nb :- not c.\n",               // pos/neg overlap in body
      "a :- not b.\nb :- not c.\nc :- not a.\n",     // odd negative loop
      "p :- q.\nq :- r.\nr.\n",                      // positive chain
      "p :- q.\nq :- p.\np :- r.\nr :- not s.\ns :- not r.\n",
      "a :- b.\nb :- c.\nc :- a.\n",                 // three-atom loop
      "a :- b.\nb :- c.\nc :- a.\na :- not d.\nd :- not a.\n",
      "x :- y, z.\ny :- x.\nz :- not w.\nw :- not z.\nx :- not v.\nv :- not x.\n",
      "a.\nb.\nc :- a, b.\nd :- c, not e.\ne :- d.\n",
      "a :- b.\na :- c.\nb :- not c.\nc :- not b.\n",
      "p.\np.\np :- p.\n",                           // duplicates and self-loop
      "a :- b, c.\nb :- a.\nc :- a.\na :- not d.\nd :- not a.\n",
      ":- not a.\na :- b.\nb :- not c.\nc :- not b.\n",
      "a :- not b.\nb :- not a.\n:- a.\n:- b.\n",    // both choices blocked
      "f :- e.\ne :- f.\nf :- d.\nd :- e.\nd :- not g.\ng :- not d.\n",
  };
}

// Pigeonhole-style instance: place each of n pigeons in one of m holes, no
// hole twice. Unsatisfiable for n > m; produces plenty of conflicts.
inline std::string pigeonhole_text(int pigeons, int holes) {
  auto atom = [](const char* stem, int i, int j) {
    return std::string(stem) + std::to_string(i) + "_" + std::to_string(j);
  };
  std::string text;
  for (int i = 0; i < pigeons; ++i)
    for (int j = 0; j < holes; ++j) {
      std::string p = atom("p", i, j), np = atom("q", i, j);
      text += p + " :- not " + np + ".\n";
      text += np + " :- not " + p + ".\n";
    }
  for (int i = 0; i < pigeons; ++i) {
    std::string body;
    for (int j = 0; j < holes; ++j) {
      if (j) body += ", ";
      body += atom("q", i, j);
    }
    text += ":- " + body + ".\n";  // pigeon i must sit somewhere
  }
  for (int j = 0; j < holes; ++j)
    for (int i1 = 0; i1 < pigeons; ++i1)
      for (int i2 = i1 + 1; i2 < pigeons; ++i2)
        text += ":- " + atom("p", i1, j) + ", " + atom("p", i2, j) + ".\n";
  return text;
}

// The two-reasons example: eleven variables, a unary nogood plus n0..n9.
// With decisions F p, T q, T r propagation ends in a conflict on n9 where
// T x and F w each have two antecedents.
struct TwoReasons {
  std::vector<std::string> names{"a", "b", "p", "q", "r", "s",
                                 "t", "u", "v", "w", "x"};
  NogoodStore store;
  Trail trail;
  Propagator prop;

  // registration ids: {T a} = 0, n0 = 1, ..., n9 = 10
  static constexpr uint32_t kTa = 0;
  static constexpr uint32_t n(int i) { return static_cast<uint32_t>(i) + 1; }

  Var var(const std::string& name) const {
    for (Var v = 0; v < names.size(); ++v)
      if (names[v] == name) return v;
    throw std::out_of_range("unknown var " + name);
  }
  Lit T(const std::string& name) const { return Lit::T(var(name)); }
  Lit F(const std::string& name) const { return Lit::F(var(name)); }

  explicit TwoReasons(SolverHooks* hooks = nullptr)
      : store(11), trail(11), prop(nullptr, store, trail, hooks) {
    auto add = [&](std::vector<Lit> lits) {
      uint32_t id = store.record(std::move(lits), NogoodOrigin::Static);
      prop.attach(id);
    };
    add({T("a")});                          // unary, fires F a at level 0
    add({F("a"), T("b")});                  // n0
    add({T("r"), F("s")});                  // n1
    add({T("s"), F("t")});                  // n2
    add({T("s"), T("u")});                  // n3
    add({T("s"), T("w")});                  // n4
    add({T("r"), T("v")});                  // n5
    add({T("q"), F("v"), T("w")});          // n6
    add({T("t"), F("u"), F("x")});          // n7
    add({F("p"), T("t"), F("x")});          // n8
    add({F("w"), T("x")});                  // n9
  }

  // Runs the scripted decisions; returns the violated nogood id (n9).
  uint32_t run_to_conflict() {
    PropagationResult r = prop.propagate();
    for (Lit d : {F("p"), T("q"), T("r")}) {
      if (r.conflict) break;
      trail.decide(d);
      r = prop.propagate();
    }
    return r.conflict ? r.violated_id : UINT32_MAX;
  }
};

inline Program make_program(const std::string& text) { return parse_program(text); }

}  // namespace cdnl::testsupport
