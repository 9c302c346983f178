#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spikelab {

/// Number of workers to use when the caller asks for `requested` (0 = all cores).
inline int resolve_workers(int requested)
{
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs body(i) for i in [0, count) on a pool of worker threads. Items are
/// handed out dynamically; callers store results by index, so the outcome does
/// not depend on scheduling. The first exception thrown by any item is
/// rethrown after all workers stop. `stop` is polled between items.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body, const std::atomic<bool>* stop = nullptr)
{
    const auto threads = static_cast<std::size_t>(std::max(1, std::min<int>(resolve_workers(workers), static_cast<int>(std::max<std::size_t>(count, 1)))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<bool> failed{false};
    const auto run = [&]() {
        for (;;) {
            if (failed.load() || (stop != nullptr && stop->load()))
                return;
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    if (threads == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(run);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace spikelab
