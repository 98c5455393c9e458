#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace fracspec {

// Worker count used by chunked reductions. Defaults to the hardware
// concurrency; settable from the CLI. Always at least 1.
int thread_count();
void set_thread_count(int n);

namespace detail {

// Deterministic parallel reduction over [lo, hi).
//
// The range is cut into fixed-size chunks whose boundaries depend only on
// `chunk` (never on the worker count), each chunk produces one partial via
// `body(chunk_lo, chunk_hi, partial)`, and partials are combined strictly in
// chunk order via `combine`. Hence the result is bit-identical for any number
// of threads: same chunks, same per-chunk evaluation order, same combine
// order. Workers grab chunks off a shared atomic counter.
template <class Partial, class Body, class Combine>
Partial reduce_chunked(std::int64_t lo, std::int64_t hi, std::int64_t chunk,
                       Partial init, Body body, Combine combine) {
  if (hi <= lo) return init;
  const std::int64_t n_chunks = (hi - lo + chunk - 1) / chunk;
  int workers = thread_count();
  if (workers > n_chunks) workers = static_cast<int>(n_chunks);

  std::vector<Partial> partials(static_cast<std::size_t>(n_chunks), init);
  std::atomic<std::int64_t> next{0};
  auto run = [&] {
    for (;;) {
      std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) break;
      std::int64_t a = lo + c * chunk;
      std::int64_t b = a + chunk < hi ? a + chunk : hi;
      body(a, b, partials[static_cast<std::size_t>(c)]);
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }

  Partial acc = init;
  for (auto& p : partials) acc = combine(acc, p);
  return acc;
}

}  // namespace detail
}  // namespace fracspec
