#pragma once

#include <exception>
#include <mutex>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace treebed {

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs f(i) for i in [0, n). The parallel path requires f to be safe for
// concurrent invocation on distinct indices; the serial loop is the reference
// the tests compare against. An exception thrown by any worker is rethrown
// on the calling thread (exceptions must not escape an OpenMP region).
template <typename F>
void parallel_for(int n, bool parallel, F&& f) {
#if defined(_OPENMP)
    if (parallel) {
        std::exception_ptr error;
        std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        }
        if (error) {
            std::rethrow_exception(error);
        }
        return;
    }
#else
    (void)parallel;
#endif
    for (int i = 0; i < n; ++i) {
        f(i);
    }
}

} // namespace treebed
