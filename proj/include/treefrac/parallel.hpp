#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace treefrac {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail {

// run one closure per worker, propagating the first worker exception
inline void join_all(std::vector<std::function<void()>>& jobs) {
    std::vector<std::exception_ptr> errors(jobs.size());
    std::vector<std::thread> pool;
    pool.reserve(jobs.size());
    for (std::size_t w = 0; w < jobs.size(); ++w)
        pool.emplace_back([&, w] {
            try {
                jobs[w]();
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Run fn(begin, end, worker) over [0, n) split into contiguous chunks, one
/// per worker. Workers own disjoint ranges; callers merge results afterwards.
inline void parallel_chunks(std::size_t n, unsigned threads,
                            const std::function<void(std::size_t, std::size_t, unsigned)>& fn) {
    unsigned t = resolve_threads(threads);
    if (t <= 1 || n < 2) {
        fn(0, n, 0);
        return;
    }
    if (static_cast<std::size_t>(t) > n) t = static_cast<unsigned>(n);
    std::size_t chunk = (n + t - 1) / t;
    std::vector<std::function<void()>> jobs;
    for (unsigned w = 0; w < t; ++w) {
        std::size_t b = w * chunk;
        std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        jobs.emplace_back([=, &fn] { fn(b, e, w); });
    }
    detail::join_all(jobs);
}

/// Dynamic work queue over n independent tasks (for uneven task sizes).
inline void parallel_tasks(std::size_t n, unsigned threads,
                           const std::function<void(std::size_t, unsigned)>& fn) {
    unsigned t = resolve_threads(threads);
    if (t <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::function<void()>> jobs;
    for (unsigned w = 0; w < t; ++w)
        jobs.emplace_back([&, w] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i, w);
            }
        });
    detail::join_all(jobs);
}

}  // namespace treefrac
