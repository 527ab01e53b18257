#pragma once

// Range scanning for averaging indices.
//
// n is a Fibonacci hit when n | F_1 + ... + F_n, i.e. F_{n+2} == 1 (mod n),
// and a Lucas hit when n | L_1 + ... + L_n, i.e. L_{n+2} == 3 (mod n). Each
// test is one O(log n) doubling chain modulo n, so any subrange can be
// scanned independently.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "fibavg/arith_primes.hpp"
#include "fibavg/seq_core.hpp"

namespace fibavg {

enum class SequenceKind { fib, lucas };

std::string_view to_string(SequenceKind kind);
std::optional<SequenceKind> parse_kind(std::string_view name);

struct Hit {
  Index n;
  SequenceKind kind;
  friend bool operator==(const Hit&, const Hit&) = default;
};

struct PairHit {
  Index n;
  Index t;
  friend bool operator==(const PairHit&, const PairHit&) = default;
};

bool is_fib_hit(Index n);
bool is_lucas_hit(Index n);
bool is_hit(SequenceKind kind, Index n);

/// Resumable state of a scan over [lo, hi]. Hits are ascending and below next_n.
struct ScanCheckpoint {
  static constexpr int current_schema = 1;

  int schema_version = current_schema;
  SequenceKind kind = SequenceKind::fib;
  Index lo = 1;
  Index hi = 1;
  Index next_n = 1;
  std::vector<Hit> hits;

  bool done() const { return next_n > hi; }
  friend bool operator==(const ScanCheckpoint&, const ScanCheckpoint&) = default;
};

/// Throws checkpoint_error (schema_mismatch or corrupt) if the state breaks
/// its invariants.
void validate_checkpoint(const ScanCheckpoint& state);

/// Fresh state; requires 1 <= lo <= hi < 2^62.
ScanCheckpoint start_scan(SequenceKind kind, Index lo, Index hi);

struct ScanOptions {
  unsigned workers = 1;
  Index block_size = Index{1} << 16;
  /// Called for each new hit, in ascending order.
  std::function<void(const Hit&)> on_hit;
  /// Called after every completed block with the advanced state.
  std::function<void(const ScanCheckpoint&)> on_block;
  /// Polled before each block; returning true leaves the scan resumable.
  std::function<bool()> should_stop;
};

/// Advances `state` block by block until the range is exhausted or
/// should_stop asks to pause. Throws checkpoint_error if `state` violates its
/// invariants.
void scan(ScanCheckpoint& state, const ScanOptions& options = {});

/// Every hit in [lo, hi], ascending. Requires 1 <= lo <= hi < 2^62.
std::vector<Hit> scan_range(SequenceKind kind, Index lo, Index hi, unsigned workers = 1);

/// Every n in [lo, hi] such that n and n + t are both Fibonacci hits.
std::vector<PairHit> pair_scan(Index t, Index lo, Index hi, unsigned workers = 1);

/// No odd prime is a Fibonacci hit. Violations would falsify that claim.
struct OddPrimeAudit {
  std::uint64_t hi = 0;
  std::uint64_t primes_checked = 0;
  std::vector<std::uint64_t> violations;
};

OddPrimeAudit odd_prime_audit(std::uint64_t hi, unsigned workers = 1);

struct SquarefreeEntry {
  Index n;
  Factorization factorization;
  bool squarefree;
};

/// Odd Fibonacci hits are square-free.
struct SquarefreeAudit {
  std::uint64_t hi = 0;
  std::vector<SquarefreeEntry> odd_hits;
  std::vector<Index> violations;
};

SquarefreeAudit squarefree_audit(std::uint64_t hi, unsigned workers = 1);

}  // namespace fibavg
