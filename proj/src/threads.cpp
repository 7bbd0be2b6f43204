#include "dirmbo/threads.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dirmbo {

int configure_threads() {
  if (const char* env = std::getenv("DIRMBO_THREADS")) {
    try {
      const int n = std::stoi(env);
#ifdef _OPENMP
      if (n > 0) omp_set_num_threads(n);
#else
      (void)n;
#endif
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return max_threads();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace dirmbo
