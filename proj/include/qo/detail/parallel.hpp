#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qo::detail {

// Worker count: explicit request, else QO_ACTION_THREADS, else a small
// default. Results never depend on the count; it only changes wall time.
inline int thread_budget(int requested = 0) {
    if (requested > 0) return std::min(requested, 64);
    if (const char* env = std::getenv("QO_ACTION_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return std::min(v, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(4u, hw == 0 ? 1u : hw));
}

// Index-sharded loop. fn(i) must write only to its own slot; the first
// exception is rethrown after all workers join.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    if (count <= 0) return;
    const int t = std::max(1, std::min(threads, count));
    if (t == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> bail{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&] {
            while (!bail.load(std::memory_order_relaxed)) {
                const int i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    bail.store(true, std::memory_order_relaxed);
                }
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qo::detail
