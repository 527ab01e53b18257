#include "fibavg/seq_core.hpp"

#include <bit>
#include <cassert>

#include "fibavg/arith_primes.hpp"

namespace fibavg {

FibPairMod fib_pair_mod(Index n, Modulus m) {
  std::uint64_t a = 0;               // F_k
  std::uint64_t b = m.reduce(1);     // F_{k+1}
  for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
    const std::uint64_t c = m.mul(a, m.sub(m.add(b, b), a));  // F_{2k}
    const std::uint64_t d = m.add(m.mul(a, a), m.mul(b, b));  // F_{2k+1}
    if ((n >> bit) & 1) {
      a = d;
      b = m.add(c, d);
    } else {
      a = c;
      b = d;
    }
  }
  return {n, m.value(), a, b};
}

LucasPairMod lucas_pair_mod(Index n, Modulus m) {
  const FibPairMod fp = fib_pair_mod(n, m);
  const std::uint64_t l = m.sub(m.add(fp.f_next, fp.f_next), fp.f);
  const std::uint64_t l_next = m.add(fp.f_next, m.add(fp.f, fp.f));
  return {n, m.value(), l, l_next};
}

namespace {

u128 exact_recurrence(Index n, u128 x0, u128 x1) {
  if (n > max_exact_index)
    throw index_too_large("exact evaluation is limited to n <= 180");
  for (Index i = 0; i < n; ++i) {
    const u128 next = x0 + x1;
    x0 = x1;
    x1 = next;
  }
  return x0;
}

}  // namespace

u128 fib_exact(Index n) { return exact_recurrence(n, 0, 1); }

u128 lucas_exact(Index n) { return exact_recurrence(n, 2, 1); }

std::uint64_t fib_sum_mod(Index n, Modulus m) {
  return m.sub(fib_pair_mod(n + 2, m).f, m.reduce(1));
}

std::uint64_t lucas_sum_mod(Index n, Modulus m) {
  return m.sub(lucas_pair_mod(n + 2, m).l, m.reduce(3));
}

int legendre5(std::uint64_t p) {
  assert(is_prime(p));
  switch (p % 5) {
    case 0:
      return 0;
    case 1:
    case 4:
      return 1;
    default:
      return -1;
  }
}

}  // namespace fibavg
