#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace petaluma {

inline unsigned effective_threads(unsigned requested) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return requested == 0 ? hw : std::min(requested, 4 * hw);
}

// Runs body(thread_index, begin, end) over a static partition of [0, count).
// Deterministic partitioning: results must be combined associatively by the
// caller (each worker owns its slot in an accumulator vector).
template <typename Body>
void parallel_chunks(std::uint64_t count, unsigned threads, Body&& body) {
    threads = effective_threads(threads);
    if (threads <= 1 || count < 2) {
        body(0u, std::uint64_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t lo = std::min<std::uint64_t>(std::uint64_t(t) * chunk, count);
        const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, count);
        if (lo == hi) break;
        pool.emplace_back([&body, t, lo, hi] { body(t, lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace petaluma
