#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace localcast {

/// Worker cap from LOCALCAST_THREADS (unset or 0 = OpenMP default).
int worker_count();

/// Runs fn(0) .. fn(count-1) across OpenMP workers. Results land in index
/// order, so the output never depends on scheduling.
template <class R>
std::vector<R> run_trials(std::size_t count, const std::function<R(std::size_t)>& fn);

namespace serial {

template <class R>
std::vector<R> run_trials(std::size_t count, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

}  // namespace serial

namespace detail {
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);
}

template <class R>
std::vector<R> run_trials(std::size_t count, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(count);
  detail::parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace localcast
