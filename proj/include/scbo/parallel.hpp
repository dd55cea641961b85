#ifndef SCBO_PARALLEL_HPP
#define SCBO_PARALLEL_HPP

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace scbo {

// Deterministic parallel map over [0, n_jobs): job i must write only slot i.
// n_workers <= 0 means machine parallelism.
inline void parallel_for(int n_jobs, int n_workers,
                         const std::function<void(int)>& fn) {
  if (n_workers <= 0)
    n_workers = static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::max(1, std::min(n_workers, n_jobs));
  if (n_workers == 1) {
    for (int i = 0; i < n_jobs; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n_jobs; i += n_workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace scbo

#endif
