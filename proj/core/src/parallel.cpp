#include "polydist/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace polydist {

unsigned worker_count() {
  if (const char* env = std::getenv("POLYDIST_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 16));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1u, 16u);
}

void parallel_chunks(std::size_t n,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
  unsigned workers = worker_count();
  if (n == 0) return;
  if (workers <= 1 || n < 2 * workers) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t b = std::min(n, w * chunk), e = std::min(n, (w + 1) * chunk);
    if (b >= e) break;
    pool.emplace_back([&, w, b, e] {
      try {
        fn(w, b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace polydist
