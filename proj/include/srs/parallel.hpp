#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// OpenMP kernels with a serial path kept as the reference implementation.
// Every reduction here is exact under reordering (max with index tie-break),
// so Serial and Parallel return bit-identical results.
namespace srs {

enum class Exec { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <typename F>
void parallel_for(Exec exec, std::ptrdiff_t n, F&& body) {
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
    return;
#endif
  }
  for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

struct ArgMax {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  // Strictly-better wins; equal value keeps the smaller index.
  void consider(double v, std::size_t i) {
    if (v > value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
  void merge(const ArgMax& other) { consider(other.value, other.index); }
};

// score(i) -> double over i in [0, n); deterministic for both exec modes.
template <typename F>
ArgMax parallel_argmax(Exec exec, std::ptrdiff_t n, F&& score) {
  ArgMax best;
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      ArgMax local;
#pragma omp for schedule(static) nowait
      for (std::ptrdiff_t i = 0; i < n; ++i)
        local.consider(score(static_cast<std::size_t>(i)), static_cast<std::size_t>(i));
#pragma omp critical(srs_argmax_merge)
      best.merge(local);
    }
    return best;
#endif
  }
  for (std::ptrdiff_t i = 0; i < n; ++i)
    best.consider(score(static_cast<std::size_t>(i)), static_cast<std::size_t>(i));
  return best;
}

}  // namespace srs
