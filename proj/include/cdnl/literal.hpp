#pragma once

#include <cstdint>
#include <vector>

#include "cdnl/contract.hpp"

namespace cdnl {

// A variable indexes the joint domain of atoms and rule bodies.
using Var = uint32_t;

// Signed literal T v / F v. T v states that v is true, F v that it is false.
class Lit {
 public:
  constexpr Lit() : code_(0) {}

  static constexpr Lit T(Var v) { return Lit(v << 1); }
  static constexpr Lit F(Var v) { return Lit((v << 1) | 1); }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool positive() const { return (code_ & 1) == 0; }

  // The complement: ~Tv = Fv, ~Fv = Tv.
  constexpr Lit operator~() const { return Lit(code_ ^ 1); }

  constexpr uint32_t code() const { return code_; }
  static constexpr Lit from_code(uint32_t c) { return Lit(c); }

  friend constexpr bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
  friend constexpr bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
  friend constexpr bool operator<(Lit a, Lit b) { return a.code_ < b.code_; }

 private:
  explicit constexpr Lit(uint32_t code) : code_(code) {}
  uint32_t code_;
};

enum class VarValue : uint8_t { Unassigned, True, False };

}  // namespace cdnl
