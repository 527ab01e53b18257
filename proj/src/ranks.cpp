#include "fibavg/ranks.hpp"

#include "fibavg/arith_primes.hpp"
#include "fibavg/errors.hpp"
#include "fibavg/seq_core.hpp"

namespace fibavg {

namespace {

void require_modulus(std::uint64_t m) {
  if (m < 2 || m > Modulus::max_value)
    throw precondition_error("modulus must satisfy 2 <= m < 2^62");
}

bool divides_fib(std::uint64_t k, Modulus m) { return fib_pair_mod(k, m).f == 0; }

std::uint64_t rank_of_prime(std::uint64_t p) {
  if (p == 2) return 3;
  if (p == 5) return 5;
  // rho(p) | p - (p/5): take the first divisor that works.
  const std::uint64_t bound = p - legendre5(p);
  const Modulus mod(p);
  for (std::uint64_t d : divisors(factorize(bound))) {
    if (divides_fib(d, mod)) return d;
  }
  throw std::logic_error("no divisor of p - (p/5) is a zero of F mod p");
}

std::uint64_t rank_of_prime_power(std::uint64_t p, unsigned e) {
  const std::uint64_t rho_p = rank_of_prime(p);
  if (e == 1) return rho_p;
  const Modulus mod(checked_pow(p, e));

  // p^e | F_{rho(p) p^{e-1}} always; divide out p while the zero survives.
  // Without a Wall-Sun-Sun prime this never divides at all.
  const std::uint64_t bound = checked_mul(rho_p, checked_pow(p, e - 1));
  std::uint64_t rho = bound;
  for (unsigned j = 1; j < e && rho % p == 0 && divides_fib(rho / p, mod); ++j) rho /= p;
  if (divides_fib(rho, mod)) return rho;

  for (std::uint64_t d : divisors(factorize(bound))) {
    if (divides_fib(d, mod)) return d;
  }
  throw std::logic_error("rank of apparition not found among divisors of the lifting bound");
}

}  // namespace

std::uint64_t rank_of_apparition(std::uint64_t m) {
  require_modulus(m);
  std::uint64_t rho = 1;
  for (const auto& [p, e] : factorize(m).factors) rho = checked_lcm(rho, rank_of_prime_power(p, e));
  return rho;
}

std::uint64_t pisano_period(std::uint64_t m) {
  const std::uint64_t rho = rank_of_apparition(m);
  // F_rho = 0, so the sequence restarts scaled by F_{rho+1}; its order counts the blocks.
  const std::uint64_t scale = fib_pair_mod(rho, Modulus(m)).f_next;
  return checked_mul(rho, multiplicative_order(scale, m));
}

std::optional<std::uint64_t> lucas_rank(std::uint64_t p, unsigned r) {
  if (p == 2 || !is_prime(p)) throw precondition_error("lucas_rank requires an odd prime");
  if (r == 0) throw precondition_error("lucas_rank requires r >= 1");
  const std::uint64_t pr = checked_pow(p, r);
  require_modulus(pr);
  const std::uint64_t rho = rank_of_prime_power(p, r);
  if (rho % 2 != 0) return std::nullopt;
  return rho / 2;
}

RankInfo rank_info(std::uint64_t m) {
  RankInfo info{m, rank_of_apparition(m), pisano_period(m), std::nullopt};
  const auto f = factorize(m);
  if (f.factors.size() == 1 && f.factors.front().prime != 2)
    info.sigma = lucas_rank(f.factors.front().prime, f.factors.front().exponent);
  return info;
}

}  // namespace fibavg
