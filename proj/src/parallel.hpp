#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace rbfdd::detail {

/// Runs body(begin, end) over contiguous chunks of [0, n) on the available cores.
template <class Body>
void parallel_for(std::size_t n, std::size_t min_chunk, Body&& body) {
    const std::size_t cores = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(cores, std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

} // namespace rbfdd::detail
