// Minimal index-parallel loop over std::thread.

#ifndef RSN_PARALLEL_HPP
#define RSN_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rsn {

/// Number of workers to use when the caller passes 0.
inline int default_workers() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Calls fn(i) for i in [begin, end) on up to `workers` threads. The first
/// exception thrown by any call is rethrown after all threads have joined.
template <class Fn>
void parallel_for(std::int64_t begin, std::int64_t end, int workers, Fn&& fn) {
    if (end <= begin) return;
    if (workers <= 0) workers = default_workers();
    const auto threads = static_cast<int>(std::min<std::int64_t>(workers, end - begin));
    if (threads == 1) {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{begin};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::int64_t i = next++; i < end; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock{error_mutex};
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace rsn

#endif  // RSN_PARALLEL_HPP
