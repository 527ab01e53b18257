#include <doctest.h>

#include <random>

#include "fibavg/seq_core.hpp"
#include "oracles.hpp"

using namespace fibavg;

TEST_CASE("fib_pair_mod examples") {
  CHECK(fib_pair_mod(0, Modulus(10)) == FibPairMod{0, 10, 0, 1});
  CHECK(fib_pair_mod(26, Modulus(1000000000)) == FibPairMod{26, 1000000000, 121393, 196418});

  // Frozen from an offline 10^9-step iteration mod m; the matrix route must agree.
  const Modulus m(9999999967ULL);
  const auto fp = fib_pair_mod(1000000000, m);
  CHECK(fp.f == 4709713759ULL);
  CHECK(fp.f_next == 8962873228ULL);
  CHECK(oracle::fib_matrix(1000000000, m.value()) == std::pair{fp.f, fp.f_next});
}

TEST_CASE("modulus one collapses everything to zero") {
  const Modulus one(1);
  CHECK(fib_pair_mod(0, one) == FibPairMod{0, 1, 0, 0});
  CHECK(fib_pair_mod(12345, one) == FibPairMod{12345, 1, 0, 0});
  CHECK(fib_sum_mod(7, one) == 0);
  CHECK(lucas_sum_mod(7, one) == 0);
}

TEST_CASE("modulus bounds") {
  CHECK_THROWS_AS(Modulus(0), precondition_error);
  CHECK_THROWS_AS(Modulus(std::uint64_t{1} << 62), precondition_error);
  CHECK_NOTHROW(Modulus(Modulus::max_value));
}

TEST_CASE("lucas_pair_mod examples") {
  CHECK(lucas_pair_mod(0, Modulus(100)) == LucasPairMod{0, 100, 2, 1});
  CHECK(lucas_pair_mod(6, Modulus(1000)) == LucasPairMod{6, 1000, 18, 29});
  CHECK(lucas_pair_mod(9, Modulus(1000)) == LucasPairMod{9, 1000, 76, 123});
}

TEST_CASE("exact values") {
  CHECK(fib_exact(24) == 46368);
  CHECK(fib_exact(5) == 5);
  CHECK(fib_exact(0) == 0);
  CHECK(lucas_exact(3) == 4);
  CHECK(lucas_exact(1) == 1);
  CHECK(lucas_exact(8) == 47);
  CHECK_THROWS_AS(fib_exact(181), index_too_large);
  CHECK_THROWS_AS(lucas_exact(181), index_too_large);
  CHECK_NOTHROW(lucas_exact(180));

  const auto fibs = oracle::fib_table(181);
  const auto lucas = oracle::fib_table(181, 2, 1);
  for (Index n = 0; n <= 180; ++n) {
    CHECK(fib_exact(n) == fibs[n]);
    CHECK(lucas_exact(n) == lucas[n]);
  }
}

TEST_CASE("sum examples") {
  CHECK(fib_sum_mod(24, Modulus(24)) == 0);
  CHECK(fib_sum_mod(3, Modulus(3)) == 1);
  CHECK(fib_sum_mod(1000, Modulus(997)) == 993);  // summation oracle, frozen
  CHECK(fib_sum_mod(1000, Modulus(997)) == oracle::fib_sum_iter(1000, 997));
  CHECK(fib_sum_mod(0, Modulus(5)) == 0);

  CHECK(lucas_sum_mod(4, Modulus(15)) == 0);
  CHECK(lucas_sum_mod(8, Modulus(8)) == 0);
  CHECK(lucas_sum_mod(0, Modulus(7)) == 0);
  // 121392 / 24 = 5058
  CHECK(fib_sum_mod(24, Modulus(1000000)) == 121392);
}

TEST_CASE("legendre5") {
  CHECK(legendre5(5) == 0);
  CHECK(legendre5(11) == 1);
  CHECK(legendre5(7) == -1);
  CHECK(legendre5(19) == 1);
  CHECK(legendre5(13) == -1);
}

TEST_CASE("fast doubling agrees with iteration for n <= 10^4") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 8; ++trial) {
    const std::uint64_t m = rng() % 1000000007ULL + 1;
    const Modulus mod(m);
    std::uint64_t a = 0, b = 1 % m;
    for (Index n = 0; n <= 10000; ++n) {
      const auto fp = fib_pair_mod(n, mod);
      REQUIRE(fp.f == a);
      REQUIRE(fp.f_next == b);
      const std::uint64_t c = (a + b) % m;
      a = b;
      b = c;
    }
  }
}

TEST_CASE("doubling consistency and determinism over wide moduli") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t m = rng() % Modulus::max_value + 1;
    const Index n = rng() % (std::uint64_t{1} << 61);
    const Modulus mod(m);
    const auto half = fib_pair_mod(n, mod);
    const auto twice = fib_pair_mod(2 * n, mod);
    const auto expect = mod.mul(half.f, mod.sub(mod.add(half.f_next, half.f_next), half.f));
    REQUIRE(twice.f == expect);
    REQUIRE(fib_pair_mod(n, mod) == half);
    REQUIRE(half.f < m);
    REQUIRE(half.f_next < m);
  }
  // Against the matrix route on large moduli.
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t m = rng() % Modulus::max_value + 1;
    const Index n = rng() % (std::uint64_t{1} << 62);
    const auto fp = fib_pair_mod(n, Modulus(m));
    REQUIRE(oracle::fib_matrix(n, m) == std::pair{fp.f, fp.f_next});
  }
}

TEST_CASE("lucas pair satisfies the recurrence and matches iteration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    const std::uint64_t m = rng() % 100000 + 1;
    const Modulus mod(m);
    for (Index n = 0; n <= 3000; ++n) {
      const auto lp = lucas_pair_mod(n, mod);
      REQUIRE(std::pair{lp.l, lp.l_next} == oracle::lucas_iter(n, m));
      REQUIRE(lucas_pair_mod(n + 1, mod).l_next == mod.add(lp.l, lp.l_next));
    }
  }
}

TEST_CASE("sum identities against direct summation") {
  for (std::uint64_t m : {2ULL, 7ULL, 24ULL, 1000ULL, 999999937ULL}) {
    const Modulus mod(m);
    std::uint64_t a = 0, b = 1 % m, fs = 0;
    std::uint64_t la = 2 % m, lb = 1 % m, ls = 0;
    for (Index n = 0; n <= 5000; ++n) {
      REQUIRE(fib_sum_mod(n, mod) == fs);
      REQUIRE(lucas_sum_mod(n, mod) == ls);
      std::uint64_t c = (a + b) % m;
      a = b;
      b = c;
      fs = (fs + a) % m;
      c = (la + lb) % m;
      la = lb;
      lb = c;
      ls = (ls + la) % m;
    }
  }
}

TEST_CASE("parity: 2 | F_n <=> 2 | L_n <=> 3 | n") {
  const Modulus two(2);
  for (Index n = 0; n <= 10000; ++n) {
    const bool f = fib_pair_mod(n, two).f == 0;
    const bool l = lucas_pair_mod(n, two).l == 0;
    REQUIRE(f == l);
    REQUIRE(l == (n % 3 == 0));
  }
}

TEST_CASE("exact and modular evaluation agree up to 180") {
  for (std::uint64_t m : {std::uint64_t{3}, std::uint64_t{1000000007}, Modulus::max_value}) {
    for (Index n = 0; n <= max_exact_index; ++n) {
      REQUIRE(static_cast<std::uint64_t>(fib_exact(n) % m) == fib_pair_mod(n, Modulus(m)).f);
      REQUIRE(static_cast<std::uint64_t>(lucas_exact(n) % m) == lucas_pair_mod(n, Modulus(m)).l);
    }
  }
}
