#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace speckit::detail {

/// Index-parallel loop with deterministic output: each worker claims indices
/// from a shared counter and writes results into caller-owned slots, so the
/// gathered output is independent of the thread count.
template <typename Fn>
void parallel_for(long count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<long>(threads, count);
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace speckit::detail
