#ifndef AZR_PARALLEL_HPP
#define AZR_PARALLEL_HPP

/*
 * Trial-parallel execution for the scan and verification harnesses.
 * Every trial is a pure function of its index (each derives its own RNG
 * stream), so results are collected by index and the reduction order is
 * independent of the thread count.  jobs == 1 selects a plain serial
 * loop, which is kept as the reference implementation the tests compare
 * the OpenMP path against.
 */

#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <omp.h>

namespace azr::par {

// --jobs default: AZR_JOBS if set, otherwise the OpenMP thread limit.
inline int default_jobs() {
    if (const char* env = std::getenv("AZR_JOBS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return omp_get_max_threads();
}

// Evaluates fn(i) for i in [0, n) and returns the results in index order.
// jobs <= 0 means default_jobs().  Exceptions thrown by fn are captured
// and the first one (by index) is rethrown after the loop.
template <typename T, typename F>
std::vector<T> map_indexed(std::size_t n, F fn, int jobs = 0) {
    if (jobs <= 0) jobs = default_jobs();
    std::vector<T> out(n);
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 8) num_threads(jobs)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace azr::par

#endif
