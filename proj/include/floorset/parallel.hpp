#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace floorset {

inline unsigned hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

// Runs fn(i) for every i in [begin, end) on up to `threads` workers.
// Indices are claimed through a shared counter; callers must write results
// into per-index slots so the outcome is independent of scheduling.
template <class Fn>
void parallel_for(uint64_t begin, uint64_t end, unsigned threads, Fn&& fn) {
    if (end <= begin) return;
    uint64_t count = end - begin;
    unsigned workers = threads ? threads : 1;
    if (count < workers) workers = static_cast<unsigned>(count);

    if (workers <= 1) {
        for (uint64_t i = begin; i < end; ++i) fn(i);
        return;
    }

    std::atomic<uint64_t> next{begin};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= end) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace floorset
