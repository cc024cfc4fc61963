#pragma once

#include <cstddef>
#include <functional>

namespace psl {

// Execution policy for the data-parallel kernels. Every parallel loop writes
// results by index, so the OpenMP schedule cannot change any output; the
// serial policy is the reference the tests compare against.
enum class Policy { Serial, Parallel };

Policy default_policy();
void set_default_policy(Policy p);
bool openmp_compiled();
int max_threads();

// Runs fn(i) for i in [0, n). Under Policy::Parallel the iterations are
// distributed over OpenMP threads; fn must only write to its own slots.
void par_for(size_t n, const std::function<void(size_t)>& fn, Policy pol);
inline void par_for(size_t n, const std::function<void(size_t)>& fn) {
  par_for(n, fn, default_policy());
}

}  // namespace psl
