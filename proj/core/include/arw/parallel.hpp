#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace arw {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs body(i) for i in [0, n).  Replicas must be independent; determinism
// comes from seeding by index, so the schedule never matters.
template <typename F>
void parallel_for(std::uint64_t n, int threads, F&& body) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    const int count = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), n));
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
}

}  // namespace arw
