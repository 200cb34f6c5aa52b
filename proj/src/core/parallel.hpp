#pragma once

#include <thread>
#include <vector>

namespace stodom {

// Runs fn(i) for i in [0, n) across `jobs` threads over contiguous index
// ranges. Callers must make fn(i) independent of execution order (pure
// functions of i writing to preallocated slot i), so the worker count can
// never change any computed value, only wall time.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  jobs = std::min(jobs, n);
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    int lo = static_cast<int>(static_cast<long long>(n) * w / jobs);
    int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / jobs);
    workers.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace stodom
