#pragma once

// Constructive families of averaging indices.
//
//   n = 3 * 2^(a+3)              n | F_1 + ... + F_n
//   n = 2^(a+3) * 3^(b+1) * 5^c  n | F_1 + ... + F_n
//   n = 2^(a+3) * 3^(b+1) * 5^c  n | L_1 + ... + L_n
//
// plus the tower 2, F_6, F_24, ... whose members v satisfy v | F_{12 v}.
// Every emitted index is checked, never assumed.

#include <cstdint>
#include <vector>

#include "fibavg/seq_core.hpp"

namespace fibavg {

enum class FamilyTheorem { thm33 = 33, thm35 = 35, thm36 = 36 };

struct FamilyMember {
  FamilyTheorem theorem;
  unsigned alpha = 0;
  unsigned beta = 0;
  unsigned gamma = 0;
  Index n = 0;
  bool verified = false;  // n divides its Fibonacci (33, 35) or Lucas (36) sum
};

/// n = 3 * 2^(alpha+3) for alpha = 0..alpha_max. Throws overflow_error once
/// n would reach 2^62.
std::vector<FamilyMember> family_thm33(unsigned alpha_max);

/// n = 2^(alpha+3) * 3^(beta+1) * 5^gamma, checked against the Fibonacci sum.
FamilyMember family_thm35(unsigned alpha, unsigned beta, unsigned gamma);

/// Same index, checked against the Lucas sum.
FamilyMember family_thm36(unsigned alpha, unsigned beta, unsigned gamma);

/// Every member of a family with n <= max_value, ascending by n.
std::vector<FamilyMember> family_members(FamilyTheorem theorem, Index max_value);

/// F_{3 2^(a+3) + 2} - 1 == F_3 L_3 L_6 ... L_{3 2^(a+1)} L_{3 2^(a+2) + 2}
/// modulo each of the identity check primes.
bool thm33_chain_holds(unsigned alpha);

struct TowerElement {
  unsigned depth;
  std::uint64_t value;
  bool divides_f12v;  // value | F_{12 value}
  bool divides_f3v;   // value | F_{3 value}
};

struct Tower {
  std::vector<TowerElement> elements;
  unsigned requested_depth = 0;
  /// True when the next element F_{3v} is beyond exact 64-bit evaluation.
  bool truncated = false;

  unsigned achieved_depth() const { return static_cast<unsigned>(elements.size()); }
};

/// value_1 = F_3 = 2, value_{d+1} = F_{3 value_d}. Requires depth_max >= 1.
Tower tower(unsigned depth_max);

}  // namespace fibavg
