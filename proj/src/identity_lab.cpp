#include "fibavg/identity_lab.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

#include "fibavg/errors.hpp"

namespace fibavg {

namespace {

// Evaluation over the integers; only valid while every index is <= 180.
struct ExactRing {
  using value_type = __int128;
  value_type fib(Index n) const { return static_cast<value_type>(fib_exact(n)); }
  value_type lucas(Index n) const { return static_cast<value_type>(lucas_exact(n)); }
  value_type constant(std::uint64_t c) const { return c; }
  value_type add(value_type a, value_type b) const { return a + b; }
  value_type sub(value_type a, value_type b) const { return a - b; }
  value_type mul(value_type a, value_type b) const { return a * b; }
};

// Evaluation in Z/mZ.
struct ResidueRing {
  Modulus m;
  using value_type = std::uint64_t;
  value_type fib(Index n) const { return fib_pair_mod(n, m).f; }
  value_type lucas(Index n) const { return lucas_pair_mod(n, m).l; }
  value_type constant(std::uint64_t c) const { return m.reduce(c); }
  value_type add(value_type a, value_type b) const { return m.add(a, b); }
  value_type sub(value_type a, value_type b) const { return m.sub(a, b); }
  value_type mul(value_type a, value_type b) const { return m.mul(a, b); }
};

template <class Ring>
bool thm21_holds(const Ring& r, std::uint64_t k) {
  const auto one = r.constant(1);
  return r.sub(r.fib(4 * k + 2), one) == r.mul(r.fib(2 * k), r.lucas(2 * k + 2)) &&
         r.sub(r.fib(4 * k + 3), one) == r.mul(r.fib(2 * k + 2), r.lucas(2 * k + 1)) &&
         r.sub(r.fib(4 * k + 4), one) == r.mul(r.fib(2 * k + 3), r.lucas(2 * k + 1)) &&
         r.sub(r.fib(4 * k + 5), one) == r.mul(r.fib(2 * k + 2), r.lucas(2 * k + 3));
}

template <class Ring>
bool lemma32_holds(const Ring& r, Index m, Index n) {
  const auto lhs = r.sub(r.lucas(m + n), r.lucas(m - n));
  const auto rhs = (n % 2 == 1) ? r.mul(r.lucas(m), r.lucas(n))
                                : r.mul(r.constant(5), r.mul(r.fib(m), r.fib(n)));
  return lhs == rhs;
}

template <class Ring>
bool doubling_holds(const Ring& r, std::uint64_t k) {
  const auto up = r.fib(k + 1), down = r.fib(k - 1);
  return r.fib(2 * k) == r.sub(r.mul(up, up), r.mul(down, down));
}

template <class Ring>
bool lucas_sum_4k_holds(const Ring& r, std::uint64_t k) {
  return r.sub(r.lucas(4 * k + 2), r.constant(3)) ==
         r.mul(r.constant(5), r.mul(r.fib(2 * k), r.fib(2 * k + 2)));
}

template <class Pred>
bool on_check_primes(Pred&& pred) {
  return std::all_of(check_primes.begin(), check_primes.end(),
                     [&](std::uint64_t p) { return pred(ResidueRing{Modulus(p)}); });
}

// Exact when the largest index involved fits, otherwise the residue path.
template <class Pred>
bool dual_path(Index largest, Pred&& pred) {
  if (largest <= max_exact_index) return pred(ExactRing{});
  return on_check_primes(pred);
}

template <class Pred>
bool dual_path(Index largest, Modulus m, Pred&& pred) {
  if (largest <= max_exact_index) return pred(ExactRing{});
  return pred(ResidueRing{m});
}

const Modulus mod4(4);

// Direct summation of the first n terms compared with the closed form, in
// exact arithmetic while it fits and modulo each check prime.
template <bool Lucas>
bool sum_matches(Index n) {
  u128 x0 = Lucas ? 2 : 0, x1 = 1, exact = 0;
  std::array<std::uint64_t, 3> sums{};
  std::array<std::uint64_t, 3> a{}, b{};
  for (std::size_t j = 0; j < 3; ++j) {
    a[j] = Lucas ? 2 : 0;
    b[j] = 1;
  }
  for (Index i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const Modulus m(check_primes[j]);
      const std::uint64_t next = m.add(a[j], b[j]);
      a[j] = b[j];
      b[j] = next;
      sums[j] = m.add(sums[j], a[j]);
    }
    if (i + 2 <= max_exact_index) {
      const u128 next = x0 + x1;
      x0 = x1;
      x1 = next;
      exact += x0;
    }
  }
  const std::uint64_t offset = Lucas ? 3 : 1;
  if (n + 2 <= max_exact_index) {
    const u128 closed = (Lucas ? lucas_exact(n + 2) : fib_exact(n + 2)) - offset;
    if (closed != exact) return false;
  }
  for (std::size_t j = 0; j < 3; ++j) {
    const Modulus m(check_primes[j]);
    const std::uint64_t closed = Lucas ? lucas_sum_mod(n, m) : fib_sum_mod(n, m);
    if (closed != sums[j]) return false;
  }
  return true;
}

}  // namespace

bool check_thm21(std::uint64_t k, Modulus m) {
  return dual_path(4 * k + 5, m, [k](const auto& r) { return thm21_holds(r, k); });
}

bool check_thm21(std::uint64_t k) {
  return dual_path(4 * k + 5, [k](const auto& r) { return thm21_holds(r, k); });
}

bool check_lemma22(Index n) { return lucas_pair_mod(n, mod4).l == lucas_pair_mod(n + 6, mod4).l; }

bool check_lemma23(std::uint64_t k) {
  const std::uint64_t s = lucas_pair_mod(2 * k + 1, mod4).l + lucas_pair_mod(2 * k + 3, mod4).l +
                          lucas_pair_mod(2 * k + 5, mod4).l;
  return s % 4 == 0;
}

bool check_lemma24(std::uint64_t k) {
  const std::uint64_t l = lucas_pair_mod(2 * k + 2, mod4).l;
  if (l == 0) return false;
  if ((k + 1) % 3 == 0) return l == 2;
  return true;
}

bool check_lemma32(Index m, Index n, Modulus mod) {
  if (n < 1 || m < n) throw precondition_error("check_lemma32 requires m >= n >= 1");
  return dual_path(m + n, mod, [=](const auto& r) { return lemma32_holds(r, m, n); });
}

bool check_lemma32(Index m, Index n) {
  if (n < 1 || m < n) throw precondition_error("check_lemma32 requires m >= n >= 1");
  return dual_path(m + n, [=](const auto& r) { return lemma32_holds(r, m, n); });
}

bool check_divisibility_26(Index n, Index m) {
  if (n < 3 || n > 90 || m > 10000)
    throw precondition_error("check_divisibility_26 requires 3 <= n <= 90 and m <= 10^4");
  const Modulus fn(static_cast<std::uint64_t>(fib_exact(n)));
  const bool fib_divides = fib_pair_mod(m, fn).f == 0;
  return fib_divides == (m % n == 0);
}

bool check_24_divides_F12k(std::uint64_t k) { return fib_pair_mod(12 * k, Modulus(24)).f == 0; }

bool check_parity(Index n) {
  const Modulus two(2);
  const bool f_even = fib_pair_mod(n, two).f == 0;
  const bool l_even = lucas_pair_mod(n, two).l == 0;
  const bool three = n % 3 == 0;
  return f_even == l_even && l_even == three;
}

bool check_fib_sum(Index n) { return sum_matches<false>(n); }

bool check_lucas_sum(Index n) { return sum_matches<true>(n); }

bool check_doubling(std::uint64_t k) {
  if (k < 1) throw precondition_error("check_doubling requires k >= 1");
  return dual_path(2 * k, [k](const auto& r) { return doubling_holds(r, k); });
}

bool check_doubling(std::uint64_t k, Modulus m) {
  if (k < 1) throw precondition_error("check_doubling requires k >= 1");
  return dual_path(2 * k, m, [k](const auto& r) { return doubling_holds(r, k); });
}

bool check_lucas_sum_4k(std::uint64_t k) {
  return dual_path(4 * k + 2, [k](const auto& r) { return lucas_sum_4k_holds(r, k); });
}

bool check_lucas_sum_4k(std::uint64_t k, Modulus m) {
  return dual_path(4 * k + 2, m, [k](const auto& r) { return lucas_sum_4k_holds(r, k); });
}

// ---------------------------------------------------------------------------

namespace {

struct IdentityName {
  IdentityId id;
  std::string_view name;
};

constexpr std::array<IdentityName, 12> identity_names = {{
    {IdentityId::parity, "parity"},
    {IdentityId::fib_sum, "fib-sum"},
    {IdentityId::lucas_sum, "lucas-sum"},
    {IdentityId::doubling, "doubling"},
    {IdentityId::f12k, "f12k"},
    {IdentityId::divisibility, "divisibility"},
    {IdentityId::thm21, "thm21"},
    {IdentityId::lemma22, "lemma22"},
    {IdentityId::lemma23, "lemma23"},
    {IdentityId::lemma24, "lemma24"},
    {IdentityId::lemma32, "lemma32"},
    {IdentityId::lucas_sum_4k, "lucas-sum-4k"},
}};

constexpr std::uint64_t divisibility_max_n = 90;
constexpr std::uint64_t divisibility_max_m = 10000;
constexpr std::uint64_t sampled_sum_cap = 10000;

// Smallest valid argument of a one-argument identity.
std::uint64_t min_argument(IdentityId id) {
  switch (id) {
    case IdentityId::doubling:
    case IdentityId::f12k:
    case IdentityId::thm21:
    case IdentityId::lemma22:
    case IdentityId::lucas_sum_4k:
      return 1;
    default:
      return 0;
  }
}

bool check_single(IdentityId id, std::uint64_t x) {
  switch (id) {
    case IdentityId::parity: return check_parity(x);
    case IdentityId::fib_sum: return check_fib_sum(x);
    case IdentityId::lucas_sum: return check_lucas_sum(x);
    case IdentityId::doubling: return check_doubling(x);
    case IdentityId::f12k: return check_24_divides_F12k(x);
    case IdentityId::thm21: return check_thm21(x);
    case IdentityId::lemma22: return check_lemma22(x);
    case IdentityId::lemma23: return check_lemma23(x);
    case IdentityId::lemma24: return check_lemma24(x);
    case IdentityId::lucas_sum_4k: return check_lucas_sum_4k(x);
    default: throw std::logic_error("not a one-argument identity");
  }
}

// Running sums make the exhaustive sum checks linear instead of quadratic.
template <bool Lucas>
void run_sums(IdentityReport& report) {
  std::array<std::uint64_t, 3> a{}, b{}, sums{};
  a.fill(Lucas ? 2 : 0);
  b.fill(1);
  u128 x0 = Lucas ? 2 : 0, x1 = 1, exact = 0;
  const std::uint64_t offset = Lucas ? 3 : 1;
  for (Index n = 0; n <= report.hi; ++n) {
    if (n > 0) {
      for (std::size_t j = 0; j < 3; ++j) {
        const Modulus m(check_primes[j]);
        const std::uint64_t next = m.add(a[j], b[j]);
        a[j] = b[j];
        b[j] = next;
        sums[j] = m.add(sums[j], a[j]);
      }
      if (n + 2 <= max_exact_index) {
        const u128 next = x0 + x1;
        x0 = x1;
        x1 = next;
        exact += x0;
      }
    }
    if (n < report.lo) continue;
    bool ok = true;
    if (n + 2 <= max_exact_index)
      ok = (Lucas ? lucas_exact(n + 2) : fib_exact(n + 2)) - offset == exact;
    for (std::size_t j = 0; j < 3 && ok; ++j) {
      const Modulus m(check_primes[j]);
      ok = (Lucas ? lucas_sum_mod(n, m) : fib_sum_mod(n, m)) == sums[j];
    }
    ++report.checked;
    if (!ok) report.failures.push_back({n});
  }
}

}  // namespace

std::string_view to_string(IdentityId id) {
  for (const auto& entry : identity_names)
    if (entry.id == id) return entry.name;
  return "unknown";
}

std::optional<IdentityId> parse_identity(std::string_view name) {
  for (const auto& entry : identity_names)
    if (entry.name == name) return entry.id;
  return std::nullopt;
}

IdentityReport run_exhaustive(IdentityId id, std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw precondition_error("identity range requires lo <= hi");
  IdentityReport report{id, false, lo, hi, 0, {}};
  switch (id) {
    case IdentityId::fib_sum:
      run_sums<false>(report);
      break;
    case IdentityId::lucas_sum:
      run_sums<true>(report);
      break;
    case IdentityId::lemma32:
      for (Index m = std::max<Index>(lo, 1); m <= hi; ++m) {
        for (Index n = std::max<Index>(lo, 1); n <= m; ++n) {
          ++report.checked;
          if (!check_lemma32(m, n)) report.failures.push_back({m, n});
        }
      }
      break;
    case IdentityId::divisibility:
      for (Index n = std::max<Index>(lo, 3); n <= std::min(hi, divisibility_max_n); ++n) {
        for (Index m = lo; m <= std::min(hi, divisibility_max_m); ++m) {
          ++report.checked;
          if (!check_divisibility_26(n, m)) report.failures.push_back({n, m});
        }
      }
      break;
    default:
      for (std::uint64_t x = std::max(lo, min_argument(id)); x <= hi; ++x) {
        ++report.checked;
        if (!check_single(id, x)) report.failures.push_back({x});
      }
  }
  return report;
}

IdentityReport run_sampled(IdentityId id, std::uint64_t samples, std::uint64_t max_index,
                           std::uint64_t seed) {
  IdentityReport report{id, true, 0, max_index, 0, {}};
  std::mt19937_64 rng(seed);
  auto draw = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, std::max(lo, hi))(rng);
  };
  for (std::uint64_t i = 0; i < samples; ++i) {
    ++report.checked;
    switch (id) {
      case IdentityId::lemma32: {
        const Index m = draw(1, max_index), n = draw(1, m);
        if (!check_lemma32(m, n)) report.failures.push_back({m, n});
        break;
      }
      case IdentityId::divisibility: {
        const Index n = draw(3, divisibility_max_n);
        const Index m = draw(0, std::min(max_index, divisibility_max_m));
        if (!check_divisibility_26(n, m)) report.failures.push_back({n, m});
        break;
      }
      case IdentityId::fib_sum:
      case IdentityId::lucas_sum: {
        const std::uint64_t x = draw(0, std::min(max_index, sampled_sum_cap));
        if (!check_single(id, x)) report.failures.push_back({x});
        break;
      }
      default: {
        const std::uint64_t x = draw(min_argument(id), max_index);
        if (!check_single(id, x)) report.failures.push_back({x});
      }
    }
  }
  return report;
}

std::string to_json(const IdentityReport& report) {
  nlohmann::ordered_json j;
  j["identity"] = std::string(to_string(report.identity));
  j["mode"] = report.sampled ? "sampled" : "exhaustive";
  j["lo"] = report.lo;
  j["hi"] = report.hi;
  j["checked"] = report.checked;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : report.failures) {
    if (f.size() == 1)
      j["failures"].push_back(f.front());
    else
      j["failures"].push_back(f);
  }
  return j.dump();
}

}  // namespace fibavg
