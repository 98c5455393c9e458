#include "fracspec/parallel.hpp"

#include <atomic>

namespace fracspec {

namespace {
std::atomic<int> g_threads{0};  // 0: not set yet, use hardware concurrency
}

int thread_count() {
  int n = g_threads.load(std::memory_order_relaxed);
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) {
  g_threads.store(n > 0 ? n : 1, std::memory_order_relaxed);
}

}  // namespace fracspec
