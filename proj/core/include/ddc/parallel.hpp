#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ddc {

/// Runs f(0..count-1) on up to `jobs` threads. Results must be written to per-index
/// slots by the caller so that the outcome does not depend on scheduling. The first
/// exception (by index) is rethrown after all workers finish.
template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F && f)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0 ; i < count ; ++i)
            f(i);
        return;
    }

    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{ 0 };
    auto worker = [&] {
        for (std::size_t i ; (i = next.fetch_add(1)) < count ; ) {
            try {
                f(i);
            }
            catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    std::vector<std::thread> threads;
    auto n = std::min<std::size_t>(jobs, count);
    for (std::size_t t = 0 ; t < n ; ++t)
        threads.emplace_back(worker);
    for (auto & t : threads)
        t.join();
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace ddc
