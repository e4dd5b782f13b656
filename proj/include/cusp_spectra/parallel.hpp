#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace cusp_spectra {

// Worker cap: CUSP_SPECTRA_THREADS when set, hardware concurrency otherwise.
inline unsigned thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CUSP_SPECTRA_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v <= 1024) n = static_cast<unsigned>(v);
    }
    return n;
}

// fn(i) for i in [0, n).  Iterations must write to disjoint state; callers
// keep determinism by storing per-index results and reducing in order.
template <class Fn>
void parallel_for(long n, Fn&& fn) {
    if (n <= 0) return;
    unsigned workers = thread_budget();
    if (workers > static_cast<unsigned long>(n)) workers = static_cast<unsigned>(n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= n) return;
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
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace cusp_spectra
