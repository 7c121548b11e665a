#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace credal::par {

// Fork-join loop over [0, count). threads <= 1 runs the serial reference
// path; threads > 1 uses OpenMP with a static schedule. Callers write
// results into preallocated index-addressed slots, so the output is
// identical bit for bit regardless of the thread count.
template <typename Fn>
void for_each_index(std::size_t count, int threads, Fn&& fn) {
#ifdef _OPENMP
    if (threads > 1) {
        #pragma omp parallel for num_threads(threads) schedule(static)
        for (long long i = 0; i < static_cast<long long>(count); ++i)
            fn(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)threads;
#endif
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

}  // namespace credal::par
