#include "fibavg/wss_scan.hpp"

#include <algorithm>

#include "fibavg/arith_primes.hpp"
#include "fibavg/errors.hpp"
#include "fibavg/parallel.hpp"
#include "fibavg/seq_core.hpp"

namespace fibavg {

namespace {

constexpr std::uint64_t wss_limit = std::uint64_t{1} << 31;
// Bounds the memory of one ordered batch when every record is emitted.
constexpr std::uint64_t batch_span = std::uint64_t{1} << 22;

WssRecord test_unchecked(std::uint64_t p) {
  const int eps = legendre5(p);
  const std::uint64_t index = eps >= 0 ? p - static_cast<std::uint64_t>(eps) : p + 1;
  return {p, eps, fib_pair_mod(index, Modulus(p * p)).f};
}

}  // namespace

WssRecord wss_test(std::uint64_t p) {
  if (p >= wss_limit) throw precondition_error("wss_test requires p < 2^31");
  if (p == 2 || !is_prime(p)) throw precondition_error("wss_test requires an odd prime");
  return test_unchecked(p);
}

WssScanResult wss_scan(std::uint64_t lo, std::uint64_t hi, unsigned workers,
                       const std::function<void(const WssRecord&)>& on_record) {
  if (hi >= wss_limit) throw precondition_error("wss_scan requires hi < 2^31");
  WssScanResult out;
  out.lo = lo;
  out.hi = hi;
  lo = std::max<std::uint64_t>(lo, 3);
  for (std::uint64_t start = lo; start <= hi; start += batch_span) {
    const std::uint64_t end = std::min(hi, start + batch_span - 1);
    const auto records = parallel_concat(start, end, workers, [](std::uint64_t a, std::uint64_t b) {
      std::vector<WssRecord> part;
      for_each_prime(a, b, [&](std::uint64_t p) { part.push_back(test_unchecked(p)); });
      return part;
    });
    out.primes_tested += records.size();
    for (const auto& r : records) {
      if (r.is_witness()) out.witnesses.push_back(r);
      if (on_record) on_record(r);
    }
  }
  return out;
}

std::vector<std::uint64_t> first_power_violations(std::uint64_t hi, unsigned workers) {
  if (hi >= wss_limit) throw precondition_error("first_power_violations requires hi < 2^31");
  if (hi < 7) return {};
  return parallel_concat(7, hi, workers, [](std::uint64_t a, std::uint64_t b) {
    std::vector<std::uint64_t> bad;
    for_each_prime(a, b, [&](std::uint64_t p) {
      if (test_unchecked(p).residue % p != 0) bad.push_back(p);
    });
    return bad;
  });
}

}  // namespace fibavg
