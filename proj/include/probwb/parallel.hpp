#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace probwb {

/// Runs body(i) for i in [0, count) on `threads` workers that pull indices
/// from a shared counter. Callers write results into slot i, so the merged
/// output does not depend on scheduling.
template <typename Body>
void parallel_for(std::int64_t count, int threads, Body&& body) {
  threads = std::max(1, threads);
  if (threads == 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    try {
      for (std::int64_t i = next++; i < count; i = next++) body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> pool;
  const int used = static_cast<int>(std::min<std::int64_t>(threads, count));
  for (int t = 0; t < used; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace probwb
