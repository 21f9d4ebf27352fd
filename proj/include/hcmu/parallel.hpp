#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hcmu::par {

// worker cap: HCMU_THREADS when set, hardware concurrency otherwise
inline int max_threads() {
  if (const char* env = std::getenv("HCMU_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw > 8 ? 8 : hw);
}

// Evaluates chunk_value(0..n_chunks-1), possibly concurrently, and sums the
// results in chunk order.  The chunk grid is fixed by the caller, so the
// reduction is bit-identical no matter how many workers run.
template <class F>
double deterministic_sum(int n_chunks, F&& chunk_value) {
  std::vector<double> partial(n_chunks, 0.0);
  const int workers = std::min(max_threads(), n_chunks);
  if (workers <= 1) {
    for (int c = 0; c < n_chunks; ++c) partial[c] = chunk_value(c);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
      for (;;) {
        int c = next.fetch_add(1);
        if (c >= n_chunks) return;
        try {
          partial[c] = chunk_value(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  double sum = 0.0;
  for (double v : partial) sum += v;
  return sum;
}

}  // namespace hcmu::par
