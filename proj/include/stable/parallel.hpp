#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stable {

// Execution policy for the per-atom kernels. `serial` is the reference path
// used by tests to validate the parallel one; both compute identical results.
enum class Exec { serial, parallel };

// Global thread count; 0 means "library default" (STABLE_THREADS env var, or
// all hardware threads). The CLI --threads flag sets this.
int configured_threads();
void set_configured_threads(int n);
int effective_threads();

namespace detail {
template <class F>
void serial_for(std::size_t n, F&& f) {
  for (std::size_t i = 0; i < n; ++i) f(i);
}
}  // namespace detail

// Per-atom loop. Atoms are independent work items, so a static schedule with
// no synchronization is enough; results are deterministic because each index
// writes only its own slot.
template <class F>
void for_each_index(Exec exec, std::size_t n, F&& f) {
#ifdef _OPENMP
  int threads = effective_threads();
  if (exec == Exec::parallel && threads > 1 && n >= 64) {
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for num_threads(threads) schedule(static)
    for (long long i = 0; i < nn; ++i) f(static_cast<std::size_t>(i));
    return;
  }
#endif
  (void)exec;
  detail::serial_for(n, f);
}

}  // namespace stable
