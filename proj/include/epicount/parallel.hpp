#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace epicount {

// Default worker cap: EPICOUNT_THREADS if set, else 1.
inline int default_threads() {
  if (const char* env = std::getenv("EPICOUNT_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

// Runs fn(chunk_index, begin, end) over [0, n) in fixed-size chunks.
// Chunk boundaries do not depend on the worker count, so any per-chunk
// partial results combined in chunk order are reproducible for every
// thread setting.
inline void parallel_chunks(std::size_t n, int threads,
                            const std::function<void(std::size_t, std::size_t,
                                                     std::size_t)>& fn,
                            std::size_t chunk = 64) {
  if (n == 0) return;
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  auto run_chunk = [&](std::size_t c) {
    fn(c, c * chunk, std::min(n, (c + 1) * chunk));
  };
  if (threads <= 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next.fetch_add(1); c < n_chunks;
         c = next.fetch_add(1))
      run_chunk(c);
  };
  std::vector<std::thread> pool;
  const int n_workers = std::min<std::size_t>(threads, n_chunks);
  pool.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace epicount
