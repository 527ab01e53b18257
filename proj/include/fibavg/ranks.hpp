#pragma once

// Rank of apparition, Pisano period and Lucas rank.
//
// rho(m) is the least k >= 1 with m | F_k; m | F_n exactly when rho(m) | n.
// The Pisano period pi(m) is the period of F mod m; rho(m) | pi(m).
// sigma(p^r), for an odd prime power, is the least k with p^r | L_k. It
// exists iff rho(p^r) is even, and then equals rho(p^r) / 2.

#include <cstdint>
#include <optional>

namespace fibavg {

struct RankInfo {
  std::uint64_t m;
  std::uint64_t rho;
  std::uint64_t pisano;
  std::optional<std::uint64_t> sigma;  // only for odd prime powers
};

/// Requires 2 <= m < 2^62.
std::uint64_t rank_of_apparition(std::uint64_t m);

/// Computed as rho(m) * ord_m(F_{rho(m)+1}). Requires 2 <= m < 2^62.
std::uint64_t pisano_period(std::uint64_t m);

/// Requires p an odd prime and p^r < 2^62. Empty when p^r divides no L_k.
std::optional<std::uint64_t> lucas_rank(std::uint64_t p, unsigned r = 1);

RankInfo rank_info(std::uint64_t m);

}  // namespace fibavg
