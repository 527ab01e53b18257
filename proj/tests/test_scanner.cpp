#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fibavg/errors.hpp"
#include "fibavg/formats.hpp"
#include "fibavg/scanner.hpp"
#include "oracles.hpp"

using namespace fibavg;

namespace {

std::vector<Index> ns(const std::vector<Hit>& hits) {
  std::vector<Index> out;
  for (const auto& h : hits) out.push_back(h.n);
  return out;
}

checkpoint_error::reason reason_of(const std::string& text) {
  try {
    checkpoint_from_json(text);
  } catch (const checkpoint_error& e) {
    return e.why();
  }
  FAIL("expected checkpoint_error");
  return checkpoint_error::reason::corrupt;
}

}  // namespace

TEST_CASE("hit examples") {
  CHECK(is_fib_hit(1));
  CHECK(is_fib_hit(24));
  CHECK_FALSE(is_fib_hit(3));
  CHECK(is_fib_hit(77));
  CHECK(is_lucas_hit(1));
  CHECK(is_lucas_hit(2));
  CHECK(is_lucas_hit(8));
  CHECK_FALSE(is_lucas_hit(3));
  CHECK_THROWS_AS(is_fib_hit(0), precondition_error);
  CHECK(ns(scan_range(SequenceKind::fib, 1, 100)) == std::vector<Index>{1, 2, 24, 48, 72, 77, 96});
  CHECK(ns(scan_range(SequenceKind::lucas, 1, 10)) == std::vector<Index>{1, 2, 8});
}

TEST_CASE("hit test agrees with direct summation for n <= 5000") {
  for (Index n = 1; n <= 5000; ++n) {
    REQUIRE(is_fib_hit(n) == oracle::fib_hit_iter(n));
    REQUIRE(is_lucas_hit(n) == oracle::lucas_hit_iter(n));
  }
}

TEST_CASE("scan output is independent of workers and partition") {
  const auto ref = scan_range(SequenceKind::fib, 1, 200000, 1);
  for (unsigned w : {2u, 3u, 8u}) CHECK(scan_range(SequenceKind::fib, 1, 200000, w) == ref);

  std::vector<Hit> pieced;
  for (Index lo = 1; lo <= 200000; lo += 37171) {
    const auto part = scan_range(SequenceKind::fib, lo, std::min<Index>(lo + 37170, 200000), 2);
    pieced.insert(pieced.end(), part.begin(), part.end());
  }
  CHECK(pieced == ref);

  for (unsigned w : {1u, 4u}) {
    for (Index block : {Index{97}, Index{5000}, Index{65536}}) {
      auto state = start_scan(SequenceKind::fib, 1, 200000);
      std::vector<Hit> streamed;
      ScanOptions opt;
      opt.workers = w;
      opt.block_size = block;
      opt.on_hit = [&](const Hit& h) { streamed.push_back(h); };
      scan(state, opt);
      CHECK(state.done());
      CHECK(state.hits == ref);
      CHECK(streamed == ref);
    }
  }
}

TEST_CASE("pausing and resuming reproduces the uninterrupted scan") {
  const auto ref = scan_range(SequenceKind::lucas, 1000, 300000, 1);
  auto state = start_scan(SequenceKind::lucas, 1000, 300000);
  int blocks = 0;
  ScanOptions opt;
  opt.block_size = 4096;
  opt.workers = 3;
  opt.on_block = [&](const ScanCheckpoint& s) {
    ++blocks;
    CHECK_NOTHROW(validate_checkpoint(s));
  };
  opt.should_stop = [&] { return blocks >= 5; };
  scan(state, opt);
  CHECK_FALSE(state.done());
  CHECK(state.next_n == 1000 + 5 * 4096);

  // Round-trip through JSON before resuming.
  auto resumed = checkpoint_from_json(to_json(state));
  CHECK(resumed == state);
  ScanOptions rest;
  rest.workers = 2;
  scan(resumed, rest);
  CHECK(resumed.done());
  CHECK(resumed.hits == ref);
}

TEST_CASE("checkpoint documents") {
  ScanCheckpoint s = start_scan(SequenceKind::fib, 1, 100);
  s.next_n = 65;
  s.hits = {{1, SequenceKind::fib}, {24, SequenceKind::fib}, {48, SequenceKind::fib}};
  const std::string doc = to_json(s);
  CHECK(doc == R"({"schema_version":1,"kind":"fib","lo":1,"hi":100,"next_n":65,"hits":[1,24,48]})");
  CHECK(checkpoint_from_json(doc) == s);

  using R = checkpoint_error::reason;
  CHECK(reason_of("{not json") == R::corrupt);
  CHECK(reason_of(R"({"schema_version":2,"kind":"fib","lo":1,"hi":100,"next_n":65,"hits":[]})") ==
        R::schema_mismatch);
  CHECK(reason_of(R"({"schema_version":1,"kind":"fib","lo":1,"hi":100,"next_n":65})") == R::corrupt);
  CHECK(reason_of(R"({"schema_version":1,"kind":"pell","lo":1,"hi":100,"next_n":65,"hits":[]})") ==
        R::corrupt);
  CHECK(reason_of(R"({"schema_version":1,"kind":"fib","lo":1,"hi":100,"next_n":65,"hits":[70]})") ==
        R::corrupt);
  CHECK(reason_of(R"({"schema_version":1,"kind":"fib","lo":1,"hi":100,"next_n":65,"hits":[24,1]})") ==
        R::corrupt);
  CHECK(reason_of(R"({"schema_version":1,"kind":"fib","lo":1,"hi":100,"next_n":500,"hits":[]})") ==
        R::corrupt);

  auto expect_reason = [&](SequenceKind k, Index lo, Index hi, R r) {
    try {
      require_resumable(s, k, lo, hi);
      FAIL("expected checkpoint_error");
    } catch (const checkpoint_error& e) {
      CHECK(e.why() == r);
    }
  };
  CHECK_NOTHROW(require_resumable(s, SequenceKind::fib, 1, 100));
  expect_reason(SequenceKind::lucas, 1, 100, R::kind_mismatch);
  expect_reason(SequenceKind::fib, 1, 101, R::range_mismatch);
  expect_reason(SequenceKind::fib, 2, 100, R::range_mismatch);
}

TEST_CASE("checkpoint files") {
  const auto dir = std::filesystem::temp_directory_path() / "fibavg_test_scanner";
  std::filesystem::create_directories(dir);
  const auto path = dir / "ck.json";
  auto s = start_scan(SequenceKind::lucas, 5, 50);
  scan(s);
  save_checkpoint(path, s);
  CHECK_FALSE(std::filesystem::exists(dir / "ck.json.tmp"));
  CHECK(load_checkpoint(path) == s);
  CHECK_THROWS_AS(load_checkpoint(dir / "missing.json"), io_error);
  {
    std::ofstream(path) << "garbage";
  }
  CHECK_THROWS_AS(load_checkpoint(path), checkpoint_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scan preconditions") {
  CHECK_THROWS_AS(start_scan(SequenceKind::fib, 0, 10), precondition_error);
  CHECK_THROWS_AS(start_scan(SequenceKind::fib, 10, 9), precondition_error);
  CHECK_THROWS_AS(start_scan(SequenceKind::fib, 1, Index{1} << 62), precondition_error);
  CHECK_NOTHROW(start_scan(SequenceKind::fib, 1, (Index{1} << 62) - 1));
  auto s = start_scan(SequenceKind::fib, 1, 10);
  s.schema_version = 7;
  CHECK_THROWS_AS(scan(s), checkpoint_error);
}

TEST_CASE("scan near the top of the index range") {
  const Index top = (Index{1} << 62) - 1;
  const auto hits = scan_range(SequenceKind::fib, top - 2000, top, 2);
  for (const auto& h : hits) CHECK(is_fib_hit(h.n));
}

TEST_CASE("consecutive hit pairs") {
  const std::vector<Index> expected{1, 6479, 11663, 34943, 47519, 51983, 196559, 327359, 685583, 954239};
  const auto pairs = pair_scan(1, 1, 1000000, 4);
  std::vector<Index> got;
  for (const auto& p : pairs) {
    CHECK(p.t == 1);
    CHECK(is_fib_hit(p.n));
    CHECK(is_fib_hit(p.n + 1));
    got.push_back(p.n);
  }
  CHECK(got == expected);
  CHECK(pair_scan(1, 1, 1000000, 1) == pairs);
  CHECK(pair_scan(1, 2, 6000).empty());

  std::vector<Index> t24;
  for (const auto& p : pair_scan(24, 1, 100)) t24.push_back(p.n);
  CHECK(t24 == std::vector<Index>{24, 48, 72, 96});
}

TEST_CASE("pairs agree with a scan-and-intersect oracle") {
  const auto hits = ns(scan_range(SequenceKind::fib, 1, 20100));
  for (Index t : {1u, 2u, 24u, 53u}) {
    std::vector<Index> want;
    for (Index n : hits)
      if (n <= 20000 && std::binary_search(hits.begin(), hits.end(), n + t)) want.push_back(n);
    std::vector<Index> got;
    for (const auto& p : pair_scan(t, 1, 20000, 3)) got.push_back(p.n);
    CHECK(got == want);
  }
}

TEST_CASE("odd prime audit") {
  const auto a = odd_prime_audit(100);
  CHECK(a.primes_checked == 24);
  CHECK(a.violations.empty());
  CHECK(odd_prime_audit(3).primes_checked == 1);
  CHECK(odd_prime_audit(2).primes_checked == 0);
  const auto b = odd_prime_audit(1000000, 4);
  CHECK(b.primes_checked == 78497);
  CHECK(b.violations.empty());
}

TEST_CASE("squarefree audit") {
  const auto a = squarefree_audit(2000, 2);
  std::vector<Index> odd;
  for (const auto& e : a.odd_hits) {
    odd.push_back(e.n);
    CHECK(e.squarefree);
    CHECK(e.factorization.value() == e.n);
  }
  CHECK(odd == std::vector<Index>{1, 77, 319, 323, 1517});
  CHECK(to_string(a.odd_hits[1].factorization) == "7 x 11");
  CHECK(a.violations.empty());

  // Odd hits divisible by 9; frozen from an independent scan with trial division.
  const auto b = squarefree_audit(1000000, 4);
  CHECK(b.odd_hits.size() == 170);
  CHECK(b.violations == std::vector<Index>{13869, 14949, 43677, 93357, 127917, 146349, 248949,
                                           282141, 362709, 391437, 418077, 512253, 755037});
  CHECK(oracle::fib_hit_iter(13869));
  CHECK(to_string(factorize(13869)) == "3^2 x 23 x 67");
}

TEST_CASE("even hits beyond 2 are multiples of 24") {
  for (const auto& h : scan_range(SequenceKind::fib, 3, 1920))
    if (h.n % 2 == 0) CHECK(h.n % 24 == 0);
}

TEST_CASE("hit writers") {
  const std::vector<Hit> hits{{1, SequenceKind::fib}, {24, SequenceKind::fib}};
  auto render = [&](OutputFormat f) {
    std::ostringstream out;
    HitWriter w(out, f);
    for (const auto& h : hits) w.write(h);
    return out.str();
  };
  CHECK(render(OutputFormat::human) == "1\n24\n");
  CHECK(render(OutputFormat::jsonl) == "{\"n\":1,\"kind\":\"fib\"}\n{\"n\":24,\"kind\":\"fib\"}\n");
  CHECK(render(OutputFormat::csv) == "n,kind\n1,fib\n24,fib\n");
  CHECK(render(OutputFormat::bfile) == "1 1\n2 24\n");

  std::ostringstream out;
  PairWriter pw(out, OutputFormat::csv);
  pw.write({6479, 1});
  CHECK(out.str() == "n,t\n6479,1\n");
  CHECK(to_jsonl(PairHit{6479, 1}) == R"({"n":6479,"t":1})");
  std::ostringstream human;
  PairWriter(human, OutputFormat::human).write({6479, 1});
  CHECK(human.str() == "6479 6480\n");
  std::ostringstream bad;
  CHECK_THROWS_AS(PairWriter(bad, OutputFormat::bfile).write({1, 1}), precondition_error);

  CHECK(parse_format("jsonl") == OutputFormat::jsonl);
  CHECK_FALSE(parse_format("xml").has_value());
  CHECK(parse_kind("lucas") == SequenceKind::lucas);
}
