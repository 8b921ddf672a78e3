#ifndef TURBOWB_UTIL_HPP
#define TURBOWB_UTIL_HPP

#include <atomic>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

namespace turbowb {

// Short decimal form that round-trips a double.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  double back = 0.0;
  if (std::sscanf(buf, "%lg", &back) == 1 && back == v) return buf;
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs fn(0..n-1) on `workers` threads. Each index owns its own output slot,
// so results are independent of scheduling.
template <typename Fn>
void parallel_for(int n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int count = std::min(workers, n);
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace turbowb

#endif
