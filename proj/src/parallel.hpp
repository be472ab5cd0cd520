#pragma once

#include <exception>

namespace qes::detail {

// Index-parallel loop; the first exception thrown by any iteration is
// rethrown on the calling thread.  Results must be written by index.
template <class F>
void parallel_for(long n, F&& body)
{
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(qes_parallel_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace qes::detail
