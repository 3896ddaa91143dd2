#include "catalynet/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace catalynet {

int worker_count() {
  if (const char* env = std::getenv("CATALYNET_THREADS")) {
    try {
      std::size_t pos = 0;
      const int n = std::stoi(env, &pos);
      if (pos == std::string(env).size() && n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the OpenMP default
    }
  }
  return omp_get_max_threads();
}

namespace detail {

void run_indexed(std::size_t n, int workers, void (*body)(std::size_t, void*), void* ctx) {
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i), ctx);
}

}  // namespace detail

}  // namespace catalynet
