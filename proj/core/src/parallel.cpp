#include "arcmap/parallel.hpp"

#include <atomic>

namespace arcmap {

namespace {
std::atomic<int> configured{0};
}

int thread_count() {
  const int n = configured.load();
  if (n > 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_thread_count(int threads) { configured.store(threads > 0 ? threads : 0); }

}  // namespace arcmap
