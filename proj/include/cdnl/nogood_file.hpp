#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cdnl/literal.hpp"
#include "cdnl/program.hpp"

namespace cdnl {

// Plain nogood sets, for driving the solver core without program semantics.
// Line-oriented format:
//
//   vars: name {name}          variable declarations (order fixes the ids)
//   nogood: LIT {, LIT}        registered in file order
//   decide: LIT                optional scripted decisions, in order
//   % comment
//
// LIT = `T name` | `F name`.
struct NogoodFile {
  std::vector<std::string> var_names;  // declaration order == variable ids
  std::vector<std::vector<Lit>> nogoods;
  std::vector<Lit> decisions;

  Var var(std::string_view name) const {
    for (Var v = 0; v < var_names.size(); ++v)
      if (var_names[v] == name) return v;
    throw std::out_of_range("unknown variable");
  }
};

inline NogoodFile parse_nogood_file(std::string_view source) {
  NogoodFile file;
  std::unordered_map<std::string, Var> ids;

  auto parse_lit = [&](const std::string& text, int line) -> Lit {
    std::istringstream in(text);
    std::string sign, name, extra;
    in >> sign >> name;
    if ((sign != "T" && sign != "F") || name.empty() || (in >> extra))
      throw ParseError(line, 1, "malformed literal '" + text + "'");
    auto it = ids.find(name);
    if (it == ids.end())
      throw ParseError(line, 1, "undeclared variable '" + name + "'");
    return sign == "T" ? Lit::T(it->second) : Lit::F(it->second);
  };

  std::istringstream stream{std::string(source)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    if (auto cut = raw.find('%'); cut != std::string::npos) raw.resize(cut);
    std::istringstream line(raw);
    std::string directive;
    if (!(line >> directive)) continue;
    std::string rest;
    std::getline(line, rest);
    if (directive == "vars:") {
      std::istringstream names(rest);
      std::string name;
      while (names >> name) {
        if (!ids.emplace(name, static_cast<Var>(file.var_names.size())).second)
          throw ParseError(line_no, 1, "duplicate variable '" + name + "'");
        file.var_names.push_back(name);
      }
    } else if (directive == "nogood:") {
      std::vector<Lit> lits;
      size_t start = 0;
      while (start <= rest.size()) {
        size_t comma = rest.find(',', start);
        std::string piece = rest.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        lits.push_back(parse_lit(piece, line_no));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      // drop exact duplicates; complementary pairs are malformed
      std::vector<Lit> unique;
      for (Lit l : lits) {
        bool dup = false;
        for (Lit u : unique) {
          if (u == l) dup = true;
          if (u == ~l)
            throw ParseError(line_no, 1, "variable occurs with both signs");
        }
        if (!dup) unique.push_back(l);
      }
      file.nogoods.push_back(std::move(unique));
    } else if (directive == "decide:") {
      file.decisions.push_back(parse_lit(rest, line_no));
    } else {
      throw ParseError(line_no, 1, "unknown directive '" + directive + "'");
    }
  }
  return file;
}

}  // namespace cdnl
