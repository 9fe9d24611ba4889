#include "cim/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

#include "cim/rng.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cim {

namespace {
int g_threads = 0;
}

void set_thread_count(int threads) { g_threads = std::max(0, threads); }

int thread_count() {
#if defined(_OPENMP)
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

void parallel_for_chunks(std::size_t count,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count));
  if (workers <= 1) {
    body(0, count);
    return;
  }
  // Several chunks per worker so uneven items still balance.
  const std::size_t chunks = std::min<std::size_t>(count, static_cast<std::size_t>(workers) * 8);
  std::exception_ptr failure;
  std::mutex failure_mutex;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t begin = count * static_cast<std::size_t>(c) / chunks;
    const std::size_t end = count * static_cast<std::size_t>(c + 1) / chunks;
    try {
      body(begin, end);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cim
