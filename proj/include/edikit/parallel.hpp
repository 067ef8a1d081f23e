#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace edikit {

/// Runs fn(lo, hi) over [begin, end) partitioned into contiguous chunks across
/// `threads` workers (0 = hardware concurrency, 1 = inline). Chunks must not
/// touch shared mutable state, and results must not depend on the
/// partitioning. The first exception thrown by a worker is rethrown here.
template <typename Fn>
void parallel_for(long long begin, long long end, int threads, Fn&& fn) {
    const long long count = end - begin;
    if (count <= 0) return;
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<long long>(workers, count));
    if (workers <= 1) {
        fn(begin, end);
        return;
    }

    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const long long chunk = (count + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const long long lo = begin + chunk * w;
            const long long hi = std::min(end, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    fn(lo, hi);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace edikit
