#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace lp {

inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

// Runs body(begin, end, worker) over [0, n) split into contiguous blocks.
// Callers merge per-worker partial results in worker order.
template <class Body> void parallel_blocks(std::uint64_t n, int workers, Body&& body) {
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::uint64_t>(n ? n : 1, 1u << 12))));
    if (workers == 1) {
        body(std::uint64_t(0), n, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (int w = 0; w < workers; ++w) {
        std::uint64_t b = n * w / workers, e = n * (w + 1) / workers;
        pool.emplace_back([&, b, e, w] {
            try {
                body(b, e, w);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace lp
