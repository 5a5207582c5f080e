#ifndef EMK_PARALLEL_HPP
#define EMK_PARALLEL_HPP

// Minimal worker-pool helper.  The thread budget comes from EMK_THREADS when
// set (values < 1 clamp to 1), otherwise from hardware concurrency.  Work
// items are dispatched by index so results can be collected deterministically.

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace emk {

inline int thread_budget() {
  if (const char* env = std::getenv("EMK_THREADS")) {
    try {
      int n = std::stoi(env);
      return n < 1 ? 1 : n;
    } catch (...) {
      return 1;
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs f(0..n-1), possibly concurrently; returns after all items finish.
// Exceptions inside workers are rethrown on the caller thread.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  int budget = thread_budget();
  if (budget <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::size_t workers = static_cast<std::size_t>(budget) < n ? static_cast<std::size_t>(budget) : n;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += workers) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace emk

#endif  // EMK_PARALLEL_HPP
