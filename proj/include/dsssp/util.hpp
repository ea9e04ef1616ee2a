#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dsssp {

// Internal parallelism cap: HOPSET_THREADS env var (>=1), else hardware.
inline int max_threads() {
    static int cached = [] {
        unsigned hw = std::thread::hardware_concurrency();
        int n = hw == 0 ? 1 : (int)hw;
        if (const char* env = std::getenv("HOPSET_THREADS")) {
            try {
                int cap = std::stoi(env);
                if (cap >= 1 && cap < n) n = cap;
            } catch (...) {
                // unparsable cap: ignore, keep hardware default
            }
        }
        return n;
    }();
    return cached;
}

// Deterministic parallel loop: body(i) for i in [0, count); bodies write only
// to their own index, so results are identical for every thread count.
inline void parallel_for(int count, const std::function<void(int)>& body) {
    int threads = std::min(max_threads(), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr first_error = nullptr;
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    std::mutex err_mu;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dsssp
