// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace portsim {

namespace detail {
inline std::atomic<int>& thread_cap_storage() {
  static std::atomic<int> cap{0};
  return cap;
}
}  // namespace detail

/// Process-wide worker cap used by parallel maps (0 = hardware concurrency).
inline void set_thread_cap(int n) { detail::thread_cap_storage() = n; }
inline int thread_cap() { return detail::thread_cap_storage(); }

/// Evaluate fn(i) for i in [0, count) across workers, results kept in index
/// order. The reduction order therefore does not depend on the thread count,
/// which keeps floating-point output bit-identical under any --threads value.
template <typename T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  int workers = thread_cap();
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (count <= 1 || workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::size_t chunk = (count + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
    if (lo >= count) break;
    const std::size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace portsim
