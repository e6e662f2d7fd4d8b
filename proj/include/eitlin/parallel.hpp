#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace eitlin {

/// Worker cap: EITLIN_THREADS if set (minimum 1), else hardware concurrency.
inline int max_threads() {
    if (const char* env = std::getenv("EITLIN_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Static-partition parallel loop over [begin, end). Each index is processed
/// exactly once; callers keep determinism by writing results into
/// per-index slots and reducing after the join.
template <typename Fn>
void parallel_for(int begin, int end, Fn&& fn) {
    const int count = end - begin;
    if (count <= 0) return;
    const int workers = std::min(max_threads(), count);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(lo + chunk, end);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace eitlin
