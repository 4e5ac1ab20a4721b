#include "stable/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stable {

namespace {
int g_threads = 0;  // 0 = pick automatically
}

int configured_threads() { return g_threads; }

void set_configured_threads(int n) { g_threads = n < 0 ? 0 : n; }

int effective_threads() {
  if (g_threads > 0) return g_threads;
  if (const char* env = std::getenv("STABLE_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
      // fall through to the default
    }
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace stable
