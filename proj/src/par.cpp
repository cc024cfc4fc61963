#include "psl/par.hpp"

#include <atomic>

#ifdef PSL_USE_OPENMP
#include <omp.h>
#endif

namespace psl {

namespace {
std::atomic<Policy> g_policy{
#ifdef PSL_USE_OPENMP
    Policy::Parallel
#else
    Policy::Serial
#endif
};
}

Policy default_policy() { return g_policy.load(); }
void set_default_policy(Policy p) { g_policy.store(p); }

bool openmp_compiled() {
#ifdef PSL_USE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef PSL_USE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void par_for(size_t n, const std::function<void(size_t)>& fn, Policy pol) {
#ifdef PSL_USE_OPENMP
  if (pol == Policy::Parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < (long long)n; ++i) {
      try {
        fn(size_t(i));
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)pol;
#endif
  for (size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace psl
