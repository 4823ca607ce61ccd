#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace ldg::detail {

// Runs body(r) for r in [0, count) split into contiguous blocks. Callers must
// keep writes disjoint per r; combining results is left to the caller so the
// summation order never depends on the thread count.
template <class Body>
void parallel_rows(int count, int threads, Body&& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int r = 0; r < count; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int r = lo; r < hi; ++r) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ldg::detail
