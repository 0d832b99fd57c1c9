#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

namespace subspace {

// Runs fn(0..count-1) on up to `threads` workers. Work items must be
// independent; callers get schedule-independent results by writing into
// preallocated slots indexed by the item.
inline void parallel_for(long count, int threads,
                         const std::function<void(long)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<long>(threads, count);
  pool.reserve(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

struct MeanSe {
  double mean;
  double se;  // sample SD / sqrt(n); 0 when n < 2
};

// Compensated two-pass mean and standard error.
inline MeanSe mean_se(const std::vector<double>& values) {
  const size_t n = values.size();
  if (n == 0) return {0.0, 0.0};
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double mean = sum / static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  double ss = 0.0, comp2 = 0.0;
  for (double v : values) {
    double d = (v - mean) * (v - mean);
    double y = d - comp2;
    double t = ss + y;
    comp2 = (t - ss) - y;
    ss = t;
  }
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace subspace
