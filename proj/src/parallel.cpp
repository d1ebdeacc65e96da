#include "se2h/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace se2h {

unsigned thread_count() {
  const char* env = std::getenv("SE2H_THREADS");
  if (env == nullptr || *env == '\0') {
    return 1;
  }
  try {
    const int n = std::stoi(env);
    return n > 0 ? static_cast<unsigned>(n) : 1U;
  } catch (const std::exception&) {
    return 1;
  }
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        body(i);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
}

}  // namespace se2h
