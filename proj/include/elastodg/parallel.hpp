#pragma once
// Static block-partitioned parallel loop. Work items never share writes, so
// results are bitwise independent of the worker count.

#include <functional>
#include <thread>
#include <vector>

namespace elastodg {

inline void parallel_for(int nitems, int nthreads,
                         const std::function<void(int item, int worker)>& fn) {
  if (nthreads <= 1 || nitems <= 1) {
    for (int i = 0; i < nitems; ++i) fn(i, 0);
    return;
  }
  nthreads = std::min(nthreads, nitems);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int w = 0; w < nthreads; ++w) {
    const int lo = (int)((long long)nitems * w / nthreads);
    const int hi = (int)((long long)nitems * (w + 1) / nthreads);
    pool.emplace_back([=, &fn] {
      for (int i = lo; i < hi; ++i) fn(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace elastodg
