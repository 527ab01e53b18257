#include "fibavg/arith_primes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fibavg/errors.hpp"

namespace fibavg {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

constexpr std::uint32_t trial_limit = 100000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(trial_limit - 1);
  return primes;
}

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

// Brent's variant; returns a nontrivial factor of the odd composite n.
std::uint64_t pollard_brent(std::uint64_t n, std::mt19937_64& rng) {
  constexpr std::uint64_t batch = 128;
  for (;;) {
    const std::uint64_t c = rng() % (n - 1) + 1;
    auto step = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    std::uint64_t y = rng() % n, x = y, ys = y, g = 1, q = 1;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
        ys = y;
        const std::uint64_t lim = std::min(batch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          q = mul_mod(q, abs_diff(x, y), n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(abs_diff(x, ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  for (; exp; exp >>= 1) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> bases = {2,  3,  5,  7,  11, 13,
                                                          17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  // The first twelve primes are a deterministic witness set below 3.3 * 10^24.
  return std::all_of(bases.begin(), bases.end(),
                     [&](std::uint64_t a) { return miller_rabin_round(n, a, d, s); });
}

std::uint64_t Factorization::value() const {
  std::uint64_t v = 1;
  for (const auto& [p, e] : factors) v = checked_mul(v, checked_pow(p, e));
  return v;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw precondition_error("factorize requires n >= 1");
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = n;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > rest) break;
    while (rest % p == 0) {
      primes.push_back(p);
      rest /= p;
    }
  }
  if (rest > 1) {
    std::mt19937_64 rng(n);
    std::vector<std::uint64_t> pending{rest};
    while (!pending.empty()) {
      const std::uint64_t v = pending.back();
      pending.pop_back();
      // Every prime below the trial limit is gone, so v < limit^2 is prime.
      if (v < static_cast<std::uint64_t>(trial_limit) * trial_limit || is_prime(v)) {
        primes.push_back(v);
        continue;
      }
      const std::uint64_t d = pollard_brent(v, rng);
      pending.push_back(d);
      pending.push_back(v / d);
    }
  }
  std::sort(primes.begin(), primes.end());

  Factorization out{n, {}};
  for (std::uint64_t p : primes) {
    if (!out.factors.empty() && out.factors.back().prime == p)
      ++out.factors.back().exponent;
    else
      out.factors.push_back({p, 1});
  }
  if (out.value() != n) throw std::logic_error("factorization does not re-multiply");
  return out;
}

bool is_squarefree(std::uint64_t n) {
  const auto f = factorize(n);
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t carmichael_lambda(const Factorization& f) {
  std::uint64_t lambda = 1;
  for (const auto& [p, e] : f.factors) {
    std::uint64_t part;
    if (p == 2)
      part = e == 1 ? 1 : e == 2 ? 2 : std::uint64_t{1} << (e - 2);
    else
      part = (p - 1) * checked_pow(p, e - 1);
    lambda = std::lcm(lambda, part);
  }
  return lambda;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m == 0) throw precondition_error("multiplicative_order requires m >= 1");
  if (m == 1) return 1;
  if (std::gcd(a % m, m) != 1)
    throw precondition_error("multiplicative_order requires gcd(a, m) = 1");
  std::uint64_t order = carmichael_lambda(factorize(m));
  for (const auto& [q, e] : factorize(order).factors) {
    for (unsigned i = 0; i < e && pow_mod(a, order / q, m) == 1; ++i) order /= q;
  }
  return order;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = primes_up_to(static_cast<std::uint32_t>(isqrt(hi)));
  constexpr std::uint64_t segment = 1 << 18;
  std::vector<char> composite(segment);
  for (std::uint64_t start = lo;; start += segment) {
    const std::uint64_t end = std::min(hi, start + (segment - 1));
    std::fill(composite.begin(), composite.end(), 0);
    for (std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t j = first; j <= end; j += p) composite[j - start] = 1;
    }
    for (std::uint64_t v = start; v <= end; ++v) {
      if (!composite[v - start]) visit(v);
    }
    if (end == hi) break;
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw overflow_error("64-bit product overflow");
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

std::string to_string(const Factorization& f) {
  if (f.factors.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (i) os << " x ";
    os << f.factors[i].prime;
    if (f.factors[i].exponent > 1) os << '^' << f.factors[i].exponent;
  }
  return os.str();
}

}  // namespace fibavg
