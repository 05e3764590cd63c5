#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace gbg::detail {

/// Splits [0, total) into fixed chunks, runs `scan(begin, end, stop)` on up
/// to `threads` workers and folds the per-chunk results in chunk order with
/// `better(candidate, incumbent)`. Chunk boundaries do not depend on the
/// thread count, and neither does the folded result as long as `better`
/// breaks ties by position.
///
/// Once a chunk's result satisfies `final(result)` no later chunk can win the
/// fold, so later chunks are skipped and `stop()` turns true inside running
/// ones; they may then return anything no better than that result.
template <typename Result, typename Scan, typename Better, typename Final>
Result parallel_reduce(std::uint64_t total, unsigned threads, Result init, Scan scan, Better better, Final final) {
  constexpr std::uint64_t kChunks = 64;
  const std::uint64_t chunk = std::max<std::uint64_t>(1, (total + kChunks - 1) / kChunks);
  const std::uint64_t count = (total + chunk - 1) / chunk;
  std::vector<Result> results(count, init);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_final{count};
  auto worker = [&] {
    for (std::uint64_t c; (c = next.fetch_add(1)) < count;) {
      if (first_final.load(std::memory_order_relaxed) < c) continue;
      const std::uint64_t begin = c * chunk;
      auto stop = [&first_final, c] { return first_final.load(std::memory_order_relaxed) < c; };
      results[c] = scan(begin, std::min(total, begin + chunk), stop);
      if (final(results[c])) {
        std::uint64_t seen = first_final.load();
        while (c < seen && !first_final.compare_exchange_weak(seen, c)) {
        }
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  Result best = init;
  for (const Result& r : results) {
    if (better(r, best)) best = r;
  }
  return best;
}

}  // namespace gbg::detail
