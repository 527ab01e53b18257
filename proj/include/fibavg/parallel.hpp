#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace fibavg {

/// Splits [lo, hi] into `workers` contiguous chunks, runs fn(chunk_lo, chunk_hi)
/// on each in its own thread and returns the per-chunk results in range order.
/// The first exception raised by any chunk is rethrown after all threads join.
template <class Fn>
auto parallel_chunks(std::uint64_t lo, std::uint64_t hi, unsigned workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t>> {
  using Result = std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t>;
  std::vector<Result> results;
  if (lo > hi) return results;
  const unsigned __int128 span = static_cast<unsigned __int128>(hi - lo) + 1;
  const unsigned count =
      static_cast<unsigned>(std::min<unsigned __int128>(std::max(workers, 1u), span));
  auto bound = [&](unsigned w) {
    return lo + static_cast<std::uint64_t>(span * w / count);
  };
  if (count == 1) {
    results.push_back(fn(lo, hi));
    return results;
  }

  results.resize(count);
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> threads;
    threads.reserve(count);
    for (unsigned w = 0; w < count; ++w) {
      threads.emplace_back([&, w] {
        try {
          results[w] = fn(bound(w), bound(w + 1) - 1);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

/// parallel_chunks for functions returning vectors, concatenated in order.
template <class Fn>
auto parallel_concat(std::uint64_t lo, std::uint64_t hi, unsigned workers, Fn&& fn) {
  auto parts = parallel_chunks(lo, hi, workers, std::forward<Fn>(fn));
  std::invoke_result_t<Fn&, std::uint64_t, std::uint64_t> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace fibavg
