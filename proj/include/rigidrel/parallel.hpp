#ifndef RIGIDREL_PARALLEL_HPP
#define RIGIDREL_PARALLEL_HPP

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rigidrel
{

/// Runs fn(worker) on `jobs` threads (inline when jobs <= 1) and rethrows the
/// first exception raised by any worker.
template <typename Fn>
void run_workers(unsigned jobs, Fn && fn)
{
    if (jobs <= 1) {
        fn(0u);
        return;
    }
    std::exception_ptr failure;
    std::mutex lock;
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            try {
                fn(w);
            }
            catch (...) {
                std::lock_guard guard(lock);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    for (auto & t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace rigidrel

#endif
