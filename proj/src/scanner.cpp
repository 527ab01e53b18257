#include "fibavg/scanner.hpp"

#include <algorithm>

#include "fibavg/errors.hpp"
#include "fibavg/parallel.hpp"

namespace fibavg {

namespace {

constexpr Index index_cap = Index{1} << 62;

void require_range(Index lo, Index hi) {
  if (lo < 1 || lo > hi || hi >= index_cap)
    throw precondition_error("scan range requires 1 <= lo <= hi < 2^62");
}

}  // namespace

void validate_checkpoint(const ScanCheckpoint& s) {
  using reason = checkpoint_error::reason;
  if (s.schema_version != ScanCheckpoint::current_schema)
    throw checkpoint_error(reason::schema_mismatch, "unsupported checkpoint schema version");
  if (s.lo < 1 || s.lo > s.hi || s.hi >= index_cap || s.next_n < s.lo || s.next_n > s.hi + 1)
    throw checkpoint_error(reason::corrupt, "checkpoint range bounds are inconsistent");
  for (std::size_t i = 0; i < s.hits.size(); ++i) {
    const Hit& h = s.hits[i];
    if (h.kind != s.kind || h.n < s.lo || h.n >= s.next_n ||
        (i > 0 && s.hits[i - 1].n >= h.n))
      throw checkpoint_error(reason::corrupt, "checkpoint hit list is inconsistent");
  }
}

std::string_view to_string(SequenceKind kind) {
  return kind == SequenceKind::fib ? "fib" : "lucas";
}

std::optional<SequenceKind> parse_kind(std::string_view name) {
  if (name == "fib") return SequenceKind::fib;
  if (name == "lucas") return SequenceKind::lucas;
  return std::nullopt;
}

bool is_fib_hit(Index n) {
  if (n < 1) throw precondition_error("hit test requires n >= 1");
  return fib_sum_mod(n, Modulus(n)) == 0;
}

bool is_lucas_hit(Index n) {
  if (n < 1) throw precondition_error("hit test requires n >= 1");
  return lucas_sum_mod(n, Modulus(n)) == 0;
}

bool is_hit(SequenceKind kind, Index n) {
  return kind == SequenceKind::fib ? is_fib_hit(n) : is_lucas_hit(n);
}

ScanCheckpoint start_scan(SequenceKind kind, Index lo, Index hi) {
  require_range(lo, hi);
  ScanCheckpoint s;
  s.kind = kind;
  s.lo = lo;
  s.hi = hi;
  s.next_n = lo;
  return s;
}

std::vector<Hit> scan_range(SequenceKind kind, Index lo, Index hi, unsigned workers) {
  require_range(lo, hi);
  return parallel_concat(lo, hi, workers, [kind](Index a, Index b) {
    std::vector<Hit> hits;
    for (Index n = a; n <= b; ++n) {
      if (is_hit(kind, n)) hits.push_back({n, kind});
    }
    return hits;
  });
}

void scan(ScanCheckpoint& state, const ScanOptions& options) {
  validate_checkpoint(state);
  const Index block = std::max<Index>(options.block_size, 1);
  while (!state.done()) {
    if (options.should_stop && options.should_stop()) return;
    const Index end = std::min(state.hi, state.next_n + (block - 1));
    const auto hits = scan_range(state.kind, state.next_n, end, options.workers);
    for (const Hit& h : hits) {
      state.hits.push_back(h);
      if (options.on_hit) options.on_hit(h);
    }
    state.next_n = end + 1;
    if (options.on_block) options.on_block(state);
  }
}

std::vector<PairHit> pair_scan(Index t, Index lo, Index hi, unsigned workers) {
  if (t < 1) throw precondition_error("pair offset requires t >= 1");
  require_range(lo, hi);
  if (hi + t >= index_cap) throw precondition_error("hi + t must stay below 2^62");
  // Hits are sparse, so testing n + t only for hits n is far cheaper than a
  // second scan of the shifted range.
  return parallel_concat(lo, hi, workers, [t](Index a, Index b) {
    std::vector<PairHit> pairs;
    for (Index n = a; n <= b; ++n) {
      if (is_fib_hit(n) && is_fib_hit(n + t)) pairs.push_back({n, t});
    }
    return pairs;
  });
}

OddPrimeAudit odd_prime_audit(std::uint64_t hi, unsigned workers) {
  if (hi >= index_cap) throw precondition_error("audit bound must stay below 2^62");
  struct Part {
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> violations;
  };
  OddPrimeAudit out;
  out.hi = hi;
  if (hi < 3) return out;
  const auto parts = parallel_chunks(3, hi, workers, [](std::uint64_t a, std::uint64_t b) {
    Part part;
    for_each_prime(a, b, [&](std::uint64_t p) {
      ++part.checked;
      if (is_fib_hit(p)) part.violations.push_back(p);
    });
    return part;
  });
  for (const auto& part : parts) {
    out.primes_checked += part.checked;
    out.violations.insert(out.violations.end(), part.violations.begin(), part.violations.end());
  }
  return out;
}

SquarefreeAudit squarefree_audit(std::uint64_t hi, unsigned workers) {
  SquarefreeAudit out;
  out.hi = hi;
  if (hi < 1) return out;
  for (const Hit& h : scan_range(SequenceKind::fib, 1, hi, workers)) {
    if (h.n % 2 == 0) continue;
    Factorization f = factorize(h.n);
    const bool squarefree = std::all_of(f.factors.begin(), f.factors.end(),
                                        [](const PrimePower& pp) { return pp.exponent == 1; });
    if (!squarefree) out.violations.push_back(h.n);
    out.odd_hits.push_back({h.n, std::move(f), squarefree});
  }
  return out;
}

}  // namespace fibavg
