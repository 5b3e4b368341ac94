#pragma once

#include <omp.h>

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

namespace rds {

/// How independent work items are scheduled. Serial is the reference path;
/// every kernel must give bit-identical results under both backends and any
/// thread count, so per-item results are written to their own slot and
/// reduced afterwards in index order.
struct ExecPolicy {
    enum class Backend { Serial, OpenMP };

    Backend backend = Backend::OpenMP;
    int threads = 0; // 0: OpenMP runtime default

    static ExecPolicy serial() { return {Backend::Serial, 1}; }
    static ExecPolicy openmp(int threads = 0) { return {Backend::OpenMP, threads}; }
};

/// Calls fn(i) for i in [0, n).
template <class Fn>
void for_each_index(std::size_t n, const ExecPolicy& policy, Fn&& fn) {
    if (policy.backend == ExecPolicy::Backend::Serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int threads = policy.threads > 0 ? policy.threads : omp_get_max_threads();
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(rds_exec_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// out[i] = fn(i) for i in [0, n).
template <class R, class Fn>
std::vector<R> map_indices(std::size_t n, const ExecPolicy& policy, Fn&& fn) {
    std::vector<R> out(n);
    for_each_index(n, policy, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

} // namespace rds
