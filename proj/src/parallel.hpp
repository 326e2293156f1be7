#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace natp {

// Run fn(i) for i in [0, count) across `workers` threads with a static
// contiguous partition. fn writes only to its own index's slot, so results
// are identical for any worker count. The first exception thrown by any
// worker is rethrown after all threads join.
template <typename Fn>
void run_indexed(std::uint64_t count, unsigned workers, Fn&& fn) {
    if (workers < 1) workers = 1;
    if (workers == 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = count * w / workers;
        std::uint64_t hi = count * (w + 1) / workers;
        threads.emplace_back([&, lo, hi] {
            try {
                for (std::uint64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace natp
