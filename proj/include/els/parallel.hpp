#pragma once

// Static block partition of an index range over worker threads. Results are
// written per block and folded by the caller in block order, so the output never
// depends on the thread count or on scheduling.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace els {

/// Number of worker threads to use for a requested count (0 = hardware concurrency).
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(block, begin, end) for `blocks` contiguous blocks of [0, n) on `threads` workers.
/// Blocks are claimed round-robin by worker index, never dynamically.
inline void parallel_blocks(std::uint64_t n, std::uint64_t blocks, unsigned threads,
                            const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& body) {
    if (blocks == 0) return;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(blocks, 1024))));
    auto run = [&](unsigned worker) {
        for (std::uint64_t b = worker; b < blocks; b += threads) {
            const std::uint64_t begin = n * b / blocks;
            const std::uint64_t end = n * (b + 1) / blocks;
            body(b, begin, end);
        }
    };
    if (threads == 1) {
        run(0);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                run(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace els
