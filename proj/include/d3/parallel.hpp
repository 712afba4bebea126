// Thread helpers with determinism by construction: work items write to
// pre-assigned slots, reductions happen afterwards in fixed index order, so
// results are identical for any worker count.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace d3 {

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Calls fn(begin, end) on disjoint contiguous blocks covering [0, n).
inline void parallel_blocks(std::size_t n, unsigned threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    fn(0, n);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::size_t block = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = t * block;
    std::size_t e = std::min(n, b + block);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

// Calls f(i) for every i in [0, n); f must only touch state owned by index i.
template <class F>
void parallel_for_index(std::size_t n, unsigned threads, F f) {
  parallel_blocks(n, threads, [&f](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) f(i);
  });
}

// Fixed-chunk reduction: sums v in chunks of `chunk`, then the chunk totals in
// order. The grouping depends only on the data layout, never on threads.
template <class T>
T sum_fixed_chunks(const std::vector<T>& v, std::size_t chunk = 1024) {
  std::vector<T> partial;
  partial.reserve(v.size() / chunk + 1);
  for (std::size_t b = 0; b < v.size(); b += chunk) {
    std::size_t e = std::min(v.size(), b + chunk);
    T s = v[b];
    for (std::size_t i = b + 1; i < e; ++i) s += v[i];
    partial.push_back(std::move(s));
  }
  if (partial.empty()) return T();
  T total = partial[0];
  for (std::size_t i = 1; i < partial.size(); ++i) total += partial[i];
  return total;
}

}  // namespace d3
