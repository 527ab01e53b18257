#pragma once

// Brute-force references for the test suites. Nothing here calls the
// library's evaluation path: sequences are iterated term by term, ranks and
// periods are found by walking the sequence, primality by trial division.

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using u128 = unsigned __int128;

// (X_n mod m, X_{n+1} mod m) by n additions from (x0, x1).
inline std::pair<std::uint64_t, std::uint64_t> iterate(std::uint64_t n, std::uint64_t m,
                                                        std::uint64_t x0, std::uint64_t x1) {
  std::uint64_t a = x0 % m, b = x1 % m;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t c = a + b;
    if (c >= m) c -= m;
    a = b;
    b = c;
  }
  return {a, b};
}

inline std::pair<std::uint64_t, std::uint64_t> fib_iter(std::uint64_t n, std::uint64_t m) {
  return iterate(n, m, 0, 1);
}

inline std::pair<std::uint64_t, std::uint64_t> lucas_iter(std::uint64_t n, std::uint64_t m) {
  return iterate(n, m, 2, 1);
}

// [[1,1],[1,0]]^n = [[F_{n+1}, F_n], [F_n, F_{n-1}]], squared and multiplied mod m.
inline std::pair<std::uint64_t, std::uint64_t> fib_matrix(std::uint64_t n, std::uint64_t m) {
  using Mat = std::uint64_t[2][2];
  auto mul = [m](const Mat& x, const Mat& y, Mat& out) {
    Mat r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r[i][j] = static_cast<std::uint64_t>(
            (static_cast<u128>(x[i][0]) * y[0][j] + static_cast<u128>(x[i][1]) * y[1][j]) % m);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[i][j] = r[i][j];
  };
  Mat result = {{1 % m, 0}, {0, 1 % m}};
  Mat base = {{1 % m, 1 % m}, {1 % m, 0}};
  for (; n; n >>= 1) {
    if (n & 1) mul(result, base, result);
    mul(base, base, base);
  }
  return {result[0][1], result[0][0]};
}

// Sum of the first n terms, term by term.
inline std::uint64_t sum_iter(std::uint64_t n, std::uint64_t m, std::uint64_t x0,
                              std::uint64_t x1) {
  std::uint64_t a = x0 % m, b = x1 % m, s = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    std::uint64_t c = a + b;
    if (c >= m) c -= m;
    a = b;
    b = c;
    s = (s + a) % m;
  }
  return s;
}

inline std::uint64_t fib_sum_iter(std::uint64_t n, std::uint64_t m) { return sum_iter(n, m, 0, 1); }
inline std::uint64_t lucas_sum_iter(std::uint64_t n, std::uint64_t m) { return sum_iter(n, m, 2, 1); }

inline bool fib_hit_iter(std::uint64_t n) { return fib_sum_iter(n, n) == 0; }
inline bool lucas_hit_iter(std::uint64_t n) { return lucas_sum_iter(n, n) == 0; }

inline std::vector<u128> fib_table(std::size_t count, u128 x0 = 0, u128 x1 = 1) {
  std::vector<u128> t{x0, x1};
  while (t.size() < count) t.push_back(t[t.size() - 1] + t[t.size() - 2]);
  t.resize(count);
  return t;
}

inline bool prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<bool> sieve(std::size_t limit) {
  std::vector<bool> p(limit + 1, true);
  p[0] = false;
  if (limit >= 1) p[1] = false;
  for (std::size_t i = 2; i * i <= limit; ++i)
    if (p[i])
      for (std::size_t j = i * i; j <= limit; j += i) p[j] = false;
  return p;
}

// Walks F mod m to the first zero.
inline std::uint64_t rank_walk(std::uint64_t m) {
  std::uint64_t a = 0, b = 1 % m, k = 0;
  do {
    std::uint64_t c = (a + b) % m;
    a = b;
    b = c;
    ++k;
  } while (a != 0);
  return k;
}

// Walks F mod m until the pair (0, 1) recurs.
inline std::uint64_t pisano_walk(std::uint64_t m) {
  std::uint64_t a = 0, b = 1 % m, k = 0;
  do {
    std::uint64_t c = (a + b) % m;
    a = b;
    b = c;
    ++k;
  } while (!(a == 0 && b == 1 % m));
  return k;
}

// Smallest k in [0, pisano) with m | L_k, or 0 when there is none.
inline std::uint64_t lucas_rank_walk(std::uint64_t m) {
  const std::uint64_t period = pisano_walk(m);
  std::uint64_t a = 2 % m, b = 1 % m;
  for (std::uint64_t k = 0; k < period; ++k) {
    if (a == 0) return k;
    std::uint64_t c = (a + b) % m;
    a = b;
    b = c;
  }
  return 0;
}

}  // namespace oracle
