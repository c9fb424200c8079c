#include "otflow/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace otflow {

unsigned worker_thread_count() {
  static const unsigned cached = [] {
    unsigned count = 0;
    if (const char* env = std::getenv("OTFLOW_THREADS")) {
      try {
        count = static_cast<unsigned>(std::stoul(env));
      } catch (...) {
        count = 0;
      }
    }
    if (count == 0) {
      count = std::thread::hardware_concurrency();
    }
    return count == 0 ? 1u : count;
  }();
  return cached;
}

void parallel_for(Index begin, Index end, const std::function<void(Index)>& fn) {
  const Index total = end - begin;
  if (total <= 0) {
    return;
  }
  const unsigned workers = worker_thread_count();
  if (workers <= 1 || total < 64) {
    for (Index i = begin; i < end; ++i) {
      fn(i);
    }
    return;
  }
  const Index chunks = static_cast<Index>(workers);
  const Index chunk_size = (total + chunks - 1) / chunks;
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(chunks));
  for (Index c = 0; c < chunks; ++c) {
    const Index lo = begin + c * chunk_size;
    const Index hi = std::min(end, lo + chunk_size);
    if (lo >= hi) {
      break;
    }
    threads.emplace_back([lo, hi, &fn] {
      for (Index i = lo; i < hi; ++i) {
        fn(i);
      }
    });
  }
  for (auto& t : threads) {
    t.join();
  }
}

}  // namespace otflow
