#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lorentz {

/// Runs fn(0..n-1) across `threads` workers. Each index owns its output slot,
/// so results are identical for every thread count; reduce after the join in
/// index order.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nw = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += nw) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace lorentz
