#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace umbrella {

/// Thread count resolution: explicit request, else UMBRELLA_THREADS, else
/// the hardware count.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("UMBRELLA_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Static block partition of [0, n) over worker threads. Each index is
/// processed exactly once and results must be written to per-index slots,
/// so reductions done afterwards in index order are independent of the
/// thread count.
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<long>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const long lo = n * w / workers;
        const long hi = n * (w + 1) / workers;
        pool.emplace_back([lo, hi, &fn] {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace umbrella
