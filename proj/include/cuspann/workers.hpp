#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace cuspann {

// Worker count from ANNIHILATOR_WORKERS (default 1).
inline unsigned worker_count() {
  const char* env = std::getenv("ANNIHILATOR_WORKERS");
  if (!env || !*env) return 1;
  long v = std::strtol(env, nullptr, 10);
  if (v < 1) return 1;
  if (v > 256) return 256;
  return static_cast<unsigned>(v);
}

// Split [0, n) into `workers` contiguous ranges, run fn(begin, end) on each and
// return the per-range results in range order.
template <class T, class Fn>
std::vector<T> parallel_ranges(std::uint64_t n, unsigned workers, Fn fn) {
  if (workers < 1) workers = 1;
  if (n < workers) workers = n ? static_cast<unsigned>(n) : 1;
  std::vector<T> out(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t b = n * w / workers, e = n * (w + 1) / workers;
    if (workers == 1) {
      out[0] = fn(b, e);
      break;
    }
    threads.emplace_back([&, w, b, e] { out[w] = fn(b, e); });
  }
  for (auto& t : threads) t.join();
  return out;
}

}  // namespace cuspann
