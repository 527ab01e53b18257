#pragma once

// Executable checks for the closed-form Fibonacci/Lucas identities that the
// averaging results rest on. Every identity is written once as a predicate
// over an evaluation "ring" and run either exactly (indices <= 180) or as
// residues modulo a prime.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibavg/seq_core.hpp"

namespace fibavg {

/// Public 61-bit primes used for residue checks of large-index equalities.
/// An equality is accepted only if it holds modulo all three.
inline constexpr std::array<std::uint64_t, 3> check_primes = {
    2305843009213693951ULL,  // 2^61 - 1
    2305843009213693921ULL,
    2305843009213693907ULL,
};

// ---------------------------------------------------------------------------
// Single checks
// ---------------------------------------------------------------------------

/// F_{4k+2}-1 = F_{2k} L_{2k+2},  F_{4k+3}-1 = F_{2k+2} L_{2k+1},
/// F_{4k+4}-1 = F_{2k+3} L_{2k+1}, F_{4k+5}-1 = F_{2k+2} L_{2k+3}.
/// Exact when 4k+5 <= 180, otherwise modulo m.
bool check_thm21(std::uint64_t k, Modulus m);
/// As above, using the three check primes on the residue path.
bool check_thm21(std::uint64_t k);

/// L_n == L_{n+6} (mod 4).
bool check_lemma22(Index n);

/// L_{2k+1} + L_{2k+3} + L_{2k+5} == 0 (mod 4).
bool check_lemma23(std::uint64_t k);

/// L_{2k+2} is not 0 mod 4, and is 2 mod 4 whenever 3 | k+1.
bool check_lemma24(std::uint64_t k);

/// L_{m+n} - L_{m-n} = L_m L_n (n odd) or 5 F_m F_n (n even), for m >= n >= 1.
/// Exact when m+n <= 180, otherwise modulo mod. Throws precondition_error if m < n.
bool check_lemma32(Index m, Index n, Modulus mod);
bool check_lemma32(Index m, Index n);

/// F_n | F_m  <=>  n | m, for 3 <= n <= 90 and m <= 10^4.
bool check_divisibility_26(Index n, Index m);

/// 24 | F_{12k}.
bool check_24_divides_F12k(std::uint64_t k);

/// 2 | F_n <=> 2 | L_n <=> 3 | n.
bool check_parity(Index n);

/// F_1 + ... + F_n = F_{n+2} - 1 against a running sum mod m (only sensible
/// for modest n; used by the batch runner over exhaustive ranges).
bool check_fib_sum(Index n);
bool check_lucas_sum(Index n);

/// F_{2k} = F_{k+1}^2 - F_{k-1}^2 for k >= 1.
bool check_doubling(std::uint64_t k);
bool check_doubling(std::uint64_t k, Modulus m);

/// L_{4k+2} - 3 = 5 F_{2k} F_{2k+2}, the Lucas-sum form behind the Lucas
/// averaging family.
bool check_lucas_sum_4k(std::uint64_t k);
bool check_lucas_sum_4k(std::uint64_t k, Modulus m);

// ---------------------------------------------------------------------------
// Batch runs
// ---------------------------------------------------------------------------

enum class IdentityId {
  parity,
  fib_sum,
  lucas_sum,
  doubling,
  f12k,
  divisibility,
  thm21,
  lemma22,
  lemma23,
  lemma24,
  lemma32,
  lucas_sum_4k,
};

inline constexpr std::array<IdentityId, 12> all_identities = {
    IdentityId::parity,  IdentityId::fib_sum,      IdentityId::lucas_sum, IdentityId::doubling,
    IdentityId::f12k,    IdentityId::divisibility, IdentityId::thm21,     IdentityId::lemma22,
    IdentityId::lemma23, IdentityId::lemma24,      IdentityId::lemma32,   IdentityId::lucas_sum_4k,
};

std::string_view to_string(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);

struct IdentityReport {
  IdentityId identity;
  bool sampled = false;  // false: exhaustive over [lo, hi]
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t checked = 0;
  /// Each failure is the argument tuple of the check that failed.
  std::vector<std::vector<std::uint64_t>> failures;

  bool passed() const { return failures.empty(); }
};

/// Runs the identity for every argument in [lo, hi]. Two-argument identities
/// run over the grid lo <= n <= m <= hi (lemma32) or n in [max(lo,3), min(hi,90)]
/// times m in [lo, min(hi, 10^4)] (divisibility). Arguments outside an
/// identity's precondition are skipped.
IdentityReport run_exhaustive(IdentityId id, std::uint64_t lo, std::uint64_t hi);

/// Runs `samples` random arguments up to max_index, drawn from a
/// generator seeded with `seed`. Summation-based identities are capped at
/// index 10^4 and divisibility at its own precondition range.
IdentityReport run_sampled(IdentityId id, std::uint64_t samples, std::uint64_t max_index,
                           std::uint64_t seed);

/// {"identity":..,"mode":..,"lo":..,"hi":..,"checked":..,"failures":[..]}
std::string to_json(const IdentityReport& report);

}  // namespace fibavg
