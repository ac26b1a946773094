// parallel.hpp — Deterministic index-parallel map. Workers own disjoint
// index ranges and write into preallocated slots; the lowest-index exception
// wins, so failures are reproducible.
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace drf {

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned max_threads = 0) {
    if (n == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (max_threads == 0) max_threads = 8;
    unsigned workers = std::min<unsigned>({hw, max_threads,
                                           static_cast<unsigned>(std::min<std::size_t>(n, 64))});
    if (workers <= 1 || n < 16) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::mutex mu;
    std::size_t first_bad = n;
    std::exception_ptr eptr;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            const std::size_t lo = n * w / workers;
            const std::size_t hi = n * (w + 1) / workers;
            for (std::size_t i = lo; i < hi; ++i) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (i < first_bad) {
                        first_bad = i;
                        eptr = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (eptr) std::rethrow_exception(eptr);
}

} // namespace drf
