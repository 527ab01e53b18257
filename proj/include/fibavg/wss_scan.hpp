#pragma once

// Wall-Sun-Sun search: a prime p is a witness when p^2 | F_{p - (p/5)}.
// None are known; p | F_{p - (p/5)} holds for every prime p != 5.

#include <cstdint>
#include <functional>
#include <vector>

namespace fibavg {

struct WssRecord {
  std::uint64_t p;
  int eps;                // (p/5)
  std::uint64_t residue;  // F_{p - eps} mod p^2

  bool is_witness() const { return residue == 0; }
  friend bool operator==(const WssRecord&, const WssRecord&) = default;
};

/// Requires p an odd prime below 2^31, so p^2 is a valid modulus.
WssRecord wss_test(std::uint64_t p);

struct WssScanResult {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t primes_tested = 0;
  std::vector<WssRecord> witnesses;
};

/// Tests every odd prime in [lo, hi]; requires hi < 2^31. on_record, if set,
/// receives every record in ascending p regardless of worker count.
WssScanResult wss_scan(std::uint64_t lo, std::uint64_t hi, unsigned workers = 1,
                       const std::function<void(const WssRecord&)>& on_record = {});

/// Primes 5 < p <= hi for which p does not divide F_{p - (p/5)}. Expected empty.
std::vector<std::uint64_t> first_power_violations(std::uint64_t hi, unsigned workers = 1);

}  // namespace fibavg
