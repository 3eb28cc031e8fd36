#include "roadsurfel/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace roadsurfel {

int effective_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_blocks(int64_t count, int64_t block_size, int threads,
                         const std::function<void(int, int64_t, int64_t)>& fn) {
  if (count <= 0) return;
  if (block_size <= 0) block_size = count;
  const int64_t block_count = (count + block_size - 1) / block_size;

  auto run_block = [&](int64_t b) {
    const int64_t begin = b * block_size;
    const int64_t end = std::min(count, begin + block_size);
    fn(static_cast<int>(b), begin, end);
  };

  const int workers = std::min<int64_t>(effective_threads(threads), block_count);
  if (workers <= 1) {
    for (int64_t b = 0; b < block_count; ++b) run_block(b);
    return;
  }

  std::atomic<int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int64_t b = next.fetch_add(1);
      if (b >= block_count) return;
      try {
        run_block(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace roadsurfel
