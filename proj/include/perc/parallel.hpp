#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace perc {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

/// Apply fn to every index in [0, count) across workers. Each index's work
/// must depend only on the index (configurations are seeded per index), so
/// the filled vector is identical for any worker count.
template <class T>
std::vector<T> parallel_map_indices(long long count, int workers,
                                    const std::function<T(long long)>& fn) {
  std::vector<T> out(static_cast<size_t>(count));
  int w = resolve_workers(workers);
  if (w <= 1 || count < 2) {
    for (long long i = 0; i < count; ++i) out[size_t(i)] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(size_t(w));
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&, t]() {
      for (long long i = t; i < count; i += w) out[size_t(i)] = fn(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace perc
