#include "localcast/trials.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

namespace localcast {

int worker_count() {
  const char* env = std::getenv("LOCALCAST_THREADS");
  if (env != nullptr) {
    const int requested = std::atoi(env);
    if (requested > 0) return requested;
  }
  return omp_get_max_threads();
}

namespace detail {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::exception_ptr failure;
  std::mutex guard;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

}  // namespace localcast
