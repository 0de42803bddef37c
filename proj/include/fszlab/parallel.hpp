#pragma once

// Chunked reductions over an index range [0, total).  The range is cut into a
// fixed number of chunks that does not depend on the thread count, and the
// partial results are merged in chunk order, so results are identical for any
// number of workers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace fszlab {

// FSZ_LAB_THREADS if set and positive, else the hardware concurrency (at least 1).
unsigned default_threads();

inline constexpr std::uint64_t kReductionChunks = 256;

// chunk(begin, end) -> T; merge(T& acc, T&& part).
template <class T, class Chunk, class Merge>
T parallel_reduce(std::uint64_t total, unsigned threads, T init, Chunk chunk, Merge merge) {
  const std::uint64_t nchunks = std::max<std::uint64_t>(1, std::min(total, kReductionChunks));
  std::vector<std::optional<T>> parts(nchunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      try {
        parts[c] = chunk(total * c / nchunks, total * (c + 1) / nchunks);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = nchunks;
      }
    }
  };
  threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, nchunks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  for (auto& part : parts) merge(init, std::move(*part));
  return init;
}

}  // namespace fszlab
