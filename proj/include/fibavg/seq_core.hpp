#pragma once

// Exact and modular evaluation of the Fibonacci and Lucas sequences.
//
//   F_0 = 0, F_1 = 1, L_0 = 2, L_1 = 1, X_{n+1} = X_n + X_{n-1}
//
// Everything beyond index 180 is evaluated as residues with the fast
// doubling identities
//   F_{2k}   = F_k (2 F_{k+1} - F_k)
//   F_{2k+1} = F_k^2 + F_{k+1}^2
// in O(log n) multiplications.

#include <cstdint>

#include "fibavg/errors.hpp"

namespace fibavg {

using Index = std::uint64_t;
using u128 = unsigned __int128;

/// Largest index whose Fibonacci and Lucas values fit an unsigned 128-bit word.
inline constexpr Index max_exact_index = 180;

/// A modulus 1 <= m < 2^62 together with the residue arithmetic over it.
/// Operands of add/sub/mul must already be reduced.
class Modulus {
 public:
  static constexpr std::uint64_t max_value = (std::uint64_t{1} << 62) - 1;

  constexpr explicit Modulus(std::uint64_t m) : m_(m) {
    if (m == 0 || m > max_value)
      throw precondition_error("modulus must satisfy 1 <= m < 2^62");
  }

  constexpr std::uint64_t value() const noexcept { return m_; }

  constexpr std::uint64_t reduce(std::uint64_t a) const noexcept { return a % m_; }

  constexpr std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= m_ ? s - m_ : s;
  }

  constexpr std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + m_ - b;
  }

  constexpr std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    // Below 2^32 the product fits 64 bits and avoids the slow 128-bit division.
    if (m_ <= 0xffffffffULL) return (a * b) % m_;
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m_);
  }

  friend constexpr bool operator==(Modulus, Modulus) = default;

 private:
  std::uint64_t m_;
};

/// (F_n mod m, F_{n+1} mod m).
struct FibPairMod {
  Index n;
  std::uint64_t m;
  std::uint64_t f;
  std::uint64_t f_next;
  friend bool operator==(const FibPairMod&, const FibPairMod&) = default;
};

/// (L_n mod m, L_{n+1} mod m).
struct LucasPairMod {
  Index n;
  std::uint64_t m;
  std::uint64_t l;
  std::uint64_t l_next;
  friend bool operator==(const LucasPairMod&, const LucasPairMod&) = default;
};

FibPairMod fib_pair_mod(Index n, Modulus m);

/// Derived from the Fibonacci pair: L_n = 2F_{n+1} - F_n and
/// L_{n+1} = F_{n+1} + 2F_n, so it costs one doubling chain.
LucasPairMod lucas_pair_mod(Index n, Modulus m);

/// Exact F_n for n <= 180; throws index_too_large above that.
u128 fib_exact(Index n);
u128 lucas_exact(Index n);

/// (F_1 + ... + F_n) mod m, evaluated as F_{n+2} - 1. Zero for n = 0.
std::uint64_t fib_sum_mod(Index n, Modulus m);

/// (L_1 + ... + L_n) mod m, evaluated as L_{n+2} - 3. Zero for n = 0.
std::uint64_t lucas_sum_mod(Index n, Modulus m);

/// Legendre symbol (p/5) for a prime p, read off p mod 5.
int legendre5(std::uint64_t p);

}  // namespace fibavg
