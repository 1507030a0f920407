#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gcdsum::detail {

/// Runs body(worker, index) for index in [0, n). Worker w handles indices
/// w, w + threads, ... so the index-to-worker map depends only on `threads`.
/// Callers that store per-index results and reduce them in index order get
/// results independent of the thread count.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(0u, i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) body(w, i);
    });
  }
}

}  // namespace gcdsum::detail
