#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace qdot {

// Runs fn(i) for i in [0, n) on the OpenMP team. Each index writes only its
// own output slot, so results do not depend on scheduling. If any iteration
// throws, the exception with the smallest index is rethrown after the loop.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline int thread_count() { return omp_get_max_threads(); }
inline void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace qdot
