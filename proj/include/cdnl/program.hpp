#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cdnl/contract.hpp"
#include "cdnl/literal.hpp"

namespace cdnl {

// Ground normal logic programs. A rule is
//
//   head :- p_1, ..., p_m, not p_{m+1}, ..., not p_n.
//
// Atoms and (deduplicated) bodies each get dense ids in first-appearance
// order; at the solver level atoms occupy variables [0, num_atoms) and bodies
// [num_atoms, num_atoms + num_bodies).

struct Atom {
  std::string name;
  bool hidden = false;  // constraint-encoding atoms, filtered from answers
};

struct Body {
  std::vector<Var> pos;  // ascending atom ids
  std::vector<Var> neg;  // ascending atom ids
};

struct Rule {
  Var head;
  uint32_t body;  // body id
};

class Program {
 public:
  std::vector<Atom> atoms;
  std::vector<Body> bodies;
  std::vector<Rule> rules;
  std::vector<std::vector<uint32_t>> body_of;  // atom -> body ids, rule order, deduped
  std::vector<std::vector<Var>> pos_dep;       // atom -> positively depended-on atoms
  std::vector<uint32_t> scc_of;                // atom -> scc index
  std::vector<std::vector<Var>> sccs;          // scc index -> member atoms (ascending)
  std::vector<bool> scc_nontrivial;            // size > 1 or self-loop
  bool tight = true;

  uint32_t num_atoms() const { return static_cast<uint32_t>(atoms.size()); }
  uint32_t num_bodies() const { return static_cast<uint32_t>(bodies.size()); }
  uint32_t num_vars() const { return num_atoms() + num_bodies(); }

  Var atom_var(uint32_t atom_id) const { return atom_id; }
  Var body_var(uint32_t body_id) const { return num_atoms() + body_id; }
  bool is_body_var(Var v) const { return v >= num_atoms(); }
  uint32_t body_id_of_var(Var v) const { return v - num_atoms(); }

  const std::string& atom_name(uint32_t atom_id) const { return atoms[atom_id].name; }

  // Display form of a variable: atom name, or "{b, not c}" for a body.
  std::string var_name(Var v) const {
    if (!is_body_var(v)) return atoms[v].name;
    const Body& b = bodies[body_id_of_var(v)];
    std::string out = "{";
    bool first = true;
    for (Var p : b.pos) {
      if (!first) out += ", ";
      out += atoms[p].name;
      first = false;
    }
    for (Var p : b.neg) {
      if (!first) out += ", ";
      out += "not ";
      out += atoms[p].name;
      first = false;
    }
    out += "}";
    return out;
  }

  std::optional<Var> atom_id(std::string_view name) const {
    auto it = atom_index_.find(std::string(name));
    if (it == atom_index_.end()) return std::nullopt;
    return it->second;
  }

  // Builders (used by the parser and by tests constructing programs directly).
  Var intern_atom(const std::string& name, bool hidden = false) {
    auto it = atom_index_.find(name);
    if (it != atom_index_.end()) return it->second;
    Var id = static_cast<Var>(atoms.size());
    atoms.push_back(Atom{name, hidden});
    atom_index_.emplace(name, id);
    return id;
  }

  uint32_t intern_body(std::vector<Var> pos, std::vector<Var> neg) {
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    std::sort(neg.begin(), neg.end());
    neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
    auto key = std::make_pair(pos, neg);
    auto it = body_index_.find(key);
    if (it != body_index_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(bodies.size());
    bodies.push_back(Body{std::move(pos), std::move(neg)});
    body_index_.emplace(std::move(key), id);
    return id;
  }

  void add_rule(Var head, uint32_t body) {
    auto key = std::make_pair(head, body);
    if (!rule_index_.insert(key).second) return;  // identical rules collapse
    rules.push_back(Rule{head, body});
  }

  void finalize() {
    build_body_of();
    build_pos_dep();
    build_sccs();
  }

 private:
  std::unordered_map<std::string, Var> atom_index_;
  std::map<std::pair<std::vector<Var>, std::vector<Var>>, uint32_t> body_index_;
  std::set<std::pair<Var, uint32_t>> rule_index_;

  void build_body_of() {
    body_of.assign(num_atoms(), {});
    for (const Rule& r : rules) {
      auto& list = body_of[r.head];
      if (std::find(list.begin(), list.end(), r.body) == list.end())
        list.push_back(r.body);
    }
  }

  void build_pos_dep() {
    pos_dep.assign(num_atoms(), {});
    for (Var p = 0; p < num_atoms(); ++p) {
      auto& adj = pos_dep[p];
      for (uint32_t b : body_of[p])
        adj.insert(adj.end(), bodies[b].pos.begin(), bodies[b].pos.end());
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
  }

  // Iterative Tarjan over atom ids in ascending order.
  void build_sccs() {
    const uint32_t n = num_atoms();
    scc_of.assign(n, UINT32_MAX);
    sccs.clear();
    scc_nontrivial.clear();

    std::vector<uint32_t> index(n, UINT32_MAX), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Var> stack;
    uint32_t next_index = 0;

    struct Frame {
      Var v;
      size_t child;
    };
    std::vector<Frame> call;

    for (Var root = 0; root < n; ++root) {
      if (index[root] != UINT32_MAX) continue;
      call.push_back({root, 0});
      index[root] = low[root] = next_index++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        Frame& f = call.back();
        if (f.child < pos_dep[f.v].size()) {
          Var w = pos_dep[f.v][f.child++];
          if (index[w] == UINT32_MAX) {
            index[w] = low[w] = next_index++;
            stack.push_back(w);
            on_stack[w] = true;
            call.push_back({w, 0});
          } else if (on_stack[w]) {
            low[f.v] = std::min(low[f.v], index[w]);
          }
        } else {
          Var v = f.v;
          call.pop_back();
          if (!call.empty())
            low[call.back().v] = std::min(low[call.back().v], low[v]);
          if (low[v] == index[v]) {
            std::vector<Var> members;
            Var w;
            do {
              w = stack.back();
              stack.pop_back();
              on_stack[w] = false;
              members.push_back(w);
            } while (w != v);
            std::sort(members.begin(), members.end());
            uint32_t id = static_cast<uint32_t>(sccs.size());
            for (Var m : members) scc_of[m] = id;
            sccs.push_back(std::move(members));
          }
        }
      }
    }

    tight = true;
    scc_nontrivial.assign(sccs.size(), false);
    for (uint32_t s = 0; s < sccs.size(); ++s) {
      bool nontrivial = sccs[s].size() > 1;
      if (!nontrivial) {
        Var a = sccs[s][0];
        const auto& adj = pos_dep[a];
        nontrivial = std::binary_search(adj.begin(), adj.end(), a);  // self-loop
      }
      scc_nontrivial[s] = nontrivial;
      if (nontrivial) tight = false;
    }
  }
};

inline bool is_tight(const Program& p) { return p.tight; }

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l),
        column(c) {}
};

namespace detail {

struct RawLit {
  bool negated;
  std::string atom;
};

struct RawStatement {
  std::optional<std::string> head;  // nullopt for an integrity constraint
  std::vector<RawLit> body;
};

class ProgramLexer {
 public:
  explicit ProgramLexer(std::string_view src) : src_(src) {}

  struct Token {
    enum Kind { Ident, Not, If, Comma, Dot, End } kind;
    std::string text;
    int line, column;
  };

  Token next() {
    skip_space();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Token::End, "", line, col};
    char c = src_[pos_];
    if (c == '.') {
      advance();
      return {Token::Dot, ".", line, col};
    }
    if (c == ',') {
      advance();
      return {Token::Comma, ",", line, col};
    }
    if (c == ':') {
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        advance();
        advance();
        return {Token::If, ":-", line, col};
      }
      throw ParseError(line, col, "expected ':-'");
    }
    if (is_ident_char(c)) {
      size_t start = pos_;
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
      std::string word(src_.substr(start, pos_ - start));
      if (word == "not") return {Token::Not, word, line, col};
      char first = word[0];
      if (!(first == '_' || (first >= 'a' && first <= 'z')))
        throw ParseError(line, col, "invalid identifier '" + word + "'");
      return {Token::Ident, word, line, col};
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

 private:
  static bool is_ident_char(char c) {
    return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9');
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace detail

// Text format: '%' comments; rule `head :- lit {, lit}.`; fact `head.`;
// constraint `:- lit {, lit}.`; lit = `atom` | `not atom`. A constraint
// `:- B.` is encoded as `x :- B, not x` with a fresh hidden atom x.
inline Program parse_program(std::string_view source) {
  detail::ProgramLexer lex(source);
  using Token = detail::ProgramLexer::Token;

  std::vector<detail::RawStatement> statements;
  std::unordered_set<std::string> names;

  Token tok = lex.next();
  while (tok.kind != Token::End) {
    detail::RawStatement st;
    if (tok.kind == Token::Ident) {
      st.head = tok.text;
      names.insert(tok.text);
      tok = lex.next();
      if (tok.kind == Token::Dot) {  // fact
        statements.push_back(std::move(st));
        tok = lex.next();
        continue;
      }
      if (tok.kind != Token::If)
        throw ParseError(tok.line, tok.column, "expected ':-' or '.'");
    } else if (tok.kind == Token::If) {
      st.head = std::nullopt;  // constraint
    } else {
      throw ParseError(tok.line, tok.column, "expected rule head or ':-'");
    }
    // body literals
    for (;;) {
      tok = lex.next();
      bool neg = false;
      if (tok.kind == Token::Not) {
        neg = true;
        tok = lex.next();
      }
      if (tok.kind != Token::Ident)
        throw ParseError(tok.line, tok.column, "expected atom");
      names.insert(tok.text);
      st.body.push_back({neg, tok.text});
      tok = lex.next();
      if (tok.kind == Token::Dot) break;
      if (tok.kind != Token::Comma)
        throw ParseError(tok.line, tok.column, "expected ',' or '.'");
    }
    statements.push_back(std::move(st));
    tok = lex.next();
  }

  Program prog;
  uint32_t fresh_counter = 0;
  for (const auto& st : statements) {
    Var head;
    std::vector<detail::RawLit> body = st.body;
    if (st.head) {
      head = prog.intern_atom(*st.head);
      for (const auto& lit : body) prog.intern_atom(lit.atom);
    } else {
      // body atoms first, then the fresh atom
      for (const auto& lit : body) prog.intern_atom(lit.atom);
      std::string fresh;
      do {
        fresh = "__c" + std::to_string(fresh_counter++);
      } while (names.count(fresh));
      head = prog.intern_atom(fresh, /*hidden=*/true);
      body.push_back({true, fresh});
    }
    std::vector<Var> pos, neg;
    for (const auto& lit : body) {
      Var a = *prog.atom_id(lit.atom);
      (lit.negated ? neg : pos).push_back(a);
    }
    prog.add_rule(head, prog.intern_body(std::move(pos), std::move(neg)));
  }
  prog.finalize();
  return prog;
}

}  // namespace cdnl
