#include "fibavg/families.hpp"

#include <algorithm>

#include "fibavg/arith_primes.hpp"
#include "fibavg/errors.hpp"
#include "fibavg/identity_lab.hpp"

namespace fibavg {

namespace {

constexpr std::uint64_t index_cap = std::uint64_t{1} << 62;

Index family_index(unsigned alpha, unsigned beta, unsigned gamma) {
  const std::uint64_t n = checked_mul(
      checked_mul(checked_pow(2, alpha + 3), checked_pow(3, beta + 1)), checked_pow(5, gamma));
  if (n >= index_cap) throw overflow_error("family index exceeds 2^62");
  return n;
}

bool fib_hit(Index n) { return fib_sum_mod(n, Modulus(n)) == 0; }
bool lucas_hit(Index n) { return lucas_sum_mod(n, Modulus(n)) == 0; }

}  // namespace

std::vector<FamilyMember> family_thm33(unsigned alpha_max) {
  std::vector<FamilyMember> out;
  for (unsigned alpha = 0; alpha <= alpha_max; ++alpha) {
    const Index n = family_index(alpha, 0, 0);
    out.push_back({FamilyTheorem::thm33, alpha, 0, 0, n, fib_hit(n)});
  }
  return out;
}

FamilyMember family_thm35(unsigned alpha, unsigned beta, unsigned gamma) {
  const Index n = family_index(alpha, beta, gamma);
  return {FamilyTheorem::thm35, alpha, beta, gamma, n, fib_hit(n)};
}

FamilyMember family_thm36(unsigned alpha, unsigned beta, unsigned gamma) {
  const Index n = family_index(alpha, beta, gamma);
  return {FamilyTheorem::thm36, alpha, beta, gamma, n, lucas_hit(n)};
}

std::vector<FamilyMember> family_members(FamilyTheorem theorem, Index max_value) {
  std::vector<FamilyMember> out;
  max_value = std::min<Index>(max_value, index_cap - 1);
  if (theorem == FamilyTheorem::thm33) {
    for (unsigned alpha = 0; (u128{24} << alpha) <= max_value; ++alpha) {
      const Index n = family_index(alpha, 0, 0);
      out.push_back({FamilyTheorem::thm33, alpha, 0, 0, n, fib_hit(n)});
    }
    return out;
  }
  // 128-bit products keep the bounds checks free of overflow.
  for (unsigned a = 0; (u128{24} << a) <= max_value; ++a) {
    for (unsigned b = 0; (u128{8} << a) * checked_pow(3, b + 1) <= max_value; ++b) {
      const u128 base = (u128{8} << a) * checked_pow(3, b + 1);
      for (unsigned c = 0; base * checked_pow(5, c) <= max_value; ++c) {
        out.push_back(theorem == FamilyTheorem::thm35 ? family_thm35(a, b, c)
                                                      : family_thm36(a, b, c));
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FamilyMember& x, const FamilyMember& y) { return x.n < y.n; });
  return out;
}

bool thm33_chain_holds(unsigned alpha) {
  const Index n = family_index(alpha, 0, 0);  // 3 * 2^(alpha+3)
  for (std::uint64_t p : check_primes) {
    const Modulus m(p);
    const std::uint64_t lhs = m.sub(fib_pair_mod(n + 2, m).f, 1);
    std::uint64_t rhs = m.mul(fib_pair_mod(3, m).f, lucas_pair_mod(3, m).l);
    for (unsigned j = 1; j <= alpha + 1; ++j)
      rhs = m.mul(rhs, lucas_pair_mod(Index{3} << j, m).l);
    rhs = m.mul(rhs, lucas_pair_mod((Index{3} << (alpha + 2)) + 2, m).l);
    if (lhs != rhs) return false;
  }
  return true;
}

Tower tower(unsigned depth_max) {
  if (depth_max < 1) throw precondition_error("tower requires depth >= 1");
  Tower out;
  out.requested_depth = depth_max;
  std::uint64_t v = static_cast<std::uint64_t>(fib_exact(3));
  for (unsigned depth = 1;; ++depth) {
    const Modulus mod(v);
    out.elements.push_back({depth, v, fib_pair_mod(12 * v, mod).f == 0,
                            fib_pair_mod(3 * v, mod).f == 0});
    if (depth == depth_max) break;
    if (3 * v > max_exact_index) {
      out.truncated = true;
      break;
    }
    const u128 next = fib_exact(3 * v);
    if (next > Modulus::max_value) {
      out.truncated = true;
      break;
    }
    v = static_cast<std::uint64_t>(next);
  }
  return out;
}

}  // namespace fibavg
