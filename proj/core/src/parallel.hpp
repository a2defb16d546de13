#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace cubictrace::detail {

// Runs work(0..parts-1) with parts dealt round-robin to the threads; the
// first exception of each thread is rethrown after joining.
template <class Work>
void run_partitioned(unsigned threads, std::size_t parts, Work&& work)
{
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(parts, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < parts; ++i)
            work(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < parts; i += threads)
                    work(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace cubictrace::detail
