#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

namespace risbeam {

/// Failure at a specific work index, re-raised to the caller after all workers joined.
struct IndexedFailure {
    std::size_t index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error;
};

/// Runs body(i) for i in [0, count) over contiguous chunks, one per worker.
/// Each chunk stops at its first exception; the lowest failing index wins, so the
/// reported failure does not depend on the worker count.
template <typename Body>
IndexedFailure parallel_for(std::size_t count, int workers, Body&& body)
{
    const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1,
                                                   std::max<std::size_t>(count, 1));
    std::vector<IndexedFailure> failures(w);
    auto run_chunk = [&](std::size_t k) {
        const std::size_t begin = count * k / w;
        const std::size_t end = count * (k + 1) / w;
        for (std::size_t i = begin; i < end; ++i) {
            try {
                body(i);
            } catch (...) {
                failures[k] = {i, std::current_exception()};
                return;
            }
        }
    };

    if (w == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(w - 1);
        for (std::size_t k = 1; k < w; ++k)
            pool.emplace_back(run_chunk, k);
        run_chunk(0);
    }

    IndexedFailure first;
    for (auto& f : failures)
        if (f.error && f.index < first.index)
            first = f;
    return first;
}

} // namespace risbeam
