#pragma once

#include <cstdint>
#include <thread>

#ifdef BELLPAIR_HAVE_OPENMP
#include <omp.h>
#endif

namespace bellpair {

inline int hardware_threads() {
#ifdef BELLPAIR_HAVE_OPENMP
  return omp_get_max_threads();
#else
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
#endif
}

// Run body(i) for i in [0, n). threads == 1 is the serial reference path;
// with OpenMP available and threads != 1 the loop is parallel. Bodies must be
// independent per index (each Monte Carlo sample derives its own RNG
// sub-stream), so results are identical on both paths and for any thread
// count.
template <typename Body>
void for_each_index(std::int64_t n, int threads, Body&& body) {
  if (threads == 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef BELLPAIR_HAVE_OPENMP
  const int want = threads > 0 ? threads : hardware_threads();
#pragma omp parallel for schedule(static) num_threads(want)
  for (std::int64_t i = 0; i < n; ++i) body(i);
#else
  for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace bellpair
