#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilspec {

// Execution policy of bulk kernels. Parallel runs write disjoint slots, so
// results are identical to the serial path regardless of thread count.
enum class Exec { Serial, Parallel };

inline bool parallel_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

template <typename F>
void sweep_for(Exec ex, long n, F&& body) {
#ifdef _OPENMP
    if (ex == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
#else
    (void)ex;
#endif
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace nilspec
