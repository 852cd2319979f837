#pragma once

#include <cstdint>
#include <vector>

#include "cdnl/contract.hpp"
#include "cdnl/literal.hpp"

namespace cdnl {

// Antecedent markers stored per assigned variable.
inline constexpr int32_t kAntecedentDecision = -1;
inline constexpr int32_t kAntecedentTopLevel = -2;

// The assignment as an ordered sequence of literals with decision levels.
// Decision level k starts at the k-th decision literal; implied literals
// carry the nogood that fired them (first antecedent found by propagation).
class Trail {
 public:
  explicit Trail(uint32_t num_vars)
      : value_(num_vars, VarValue::Unassigned),
        pos_(num_vars, -1),
        level_(num_vars, 0),
        antecedent_(num_vars, kAntecedentTopLevel) {}

  uint32_t num_vars() const { return static_cast<uint32_t>(value_.size()); }
  uint32_t size() const { return static_cast<uint32_t>(seq_.size()); }
  bool total() const { return seq_.size() == value_.size(); }
  Lit operator[](uint32_t i) const { return seq_[i]; }

  uint32_t current_level() const { return static_cast<uint32_t>(level_starts_.size()); }
  uint32_t level_start(uint32_t level) const { return level_starts_[level - 1]; }

  VarValue value(Var v) const { return value_[v]; }
  bool assigned(Var v) const { return value_[v] != VarValue::Unassigned; }
  bool is_true(Lit l) const {
    return value_[l.var()] == (l.positive() ? VarValue::True : VarValue::False);
  }
  bool is_false(Lit l) const {
    return value_[l.var()] == (l.positive() ? VarValue::False : VarValue::True);
  }

  uint32_t position(Var v) const {
    CDNL_REQUIRE(assigned(v), "position of unassigned variable");
    return static_cast<uint32_t>(pos_[v]);
  }
  uint32_t level(Var v) const {
    CDNL_REQUIRE(assigned(v), "level of unassigned variable");
    return level_[v];
  }
  int32_t antecedent(Var v) const {
    CDNL_REQUIRE(assigned(v), "antecedent of unassigned variable");
    return antecedent_[v];
  }

  // Index one past the prefix A[l]: position of l if l is in A, else size().
  uint32_t prefix_end(Lit l) const {
    if (assigned(l.var()) && is_true(l)) return static_cast<uint32_t>(pos_[l.var()]);
    return size();
  }

  void push_level() { level_starts_.push_back(size()); }

  void assign(Lit l, int32_t antecedent) {
    CDNL_REQUIRE(!assigned(l.var()), "variable already assigned");
    if (antecedent == kAntecedentDecision)
      CDNL_REQUIRE(!level_starts_.empty() && level_starts_.back() == size(),
                   "decision without a fresh level");
    value_[l.var()] = l.positive() ? VarValue::True : VarValue::False;
    pos_[l.var()] = static_cast<int32_t>(seq_.size());
    level_[l.var()] = current_level();
    antecedent_[l.var()] = antecedent;
    seq_.push_back(l);
  }

  void decide(Lit l) {
    push_level();
    assign(l, kAntecedentDecision);
  }

  // Remove every literal with level > k.
  void backjump(uint32_t k) {
    CDNL_REQUIRE(k <= current_level(), "backjump above current level");
    while (!seq_.empty() && level_[seq_.back().var()] > k) {
      Var v = seq_.back().var();
      value_[v] = VarValue::Unassigned;
      pos_[v] = -1;
      level_[v] = 0;
      antecedent_[v] = kAntecedentTopLevel;
      seq_.pop_back();
    }
    level_starts_.resize(k);
  }

  // True iff a was assigned strictly before b.
  bool precedes(Lit a, Lit b) const {
    CDNL_REQUIRE(assigned(a.var()) && assigned(b.var()),
                 "precedes on unassigned literal");
    return pos_[a.var()] < pos_[b.var()];
  }

 private:
  std::vector<Lit> seq_;
  std::vector<VarValue> value_;
  std::vector<int32_t> pos_;
  std::vector<uint32_t> level_;
  std::vector<int32_t> antecedent_;
  std::vector<uint32_t> level_starts_;
};

}  // namespace cdnl
