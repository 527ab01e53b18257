#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fibavg {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// n = prod p_i^{e_i}, primes strictly ascending; empty for n = 1.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;

  std::uint64_t value() const;  // re-multiplies the factors
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input. is_prime(0) and
/// is_prime(1) are false.
bool is_prime(std::uint64_t n);

/// Trial division by primes below 10^5, then Pollard-Brent rho on the
/// cofactor with a seed derived from n. The result is verified by
/// re-multiplication before it is returned.
Factorization factorize(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(const Factorization& f);

/// Carmichael's lambda: the exponent of the unit group mod n.
std::uint64_t carmichael_lambda(const Factorization& f);

/// Order of a in (Z/mZ)^*, using lambda(m) as the starting bound.
/// Requires gcd(a, m) = 1 and m >= 2.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Sieve of Eratosthenes over [0, limit].
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Visits every prime in [lo, hi] in ascending order using a segmented sieve.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit);

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);
std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);

/// "7 x 11", "2^4 x 3^2 x 5", "1".
std::string to_string(const Factorization& f);

}  // namespace fibavg
