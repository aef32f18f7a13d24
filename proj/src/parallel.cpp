#include "spectral_lab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace slab {

namespace {
std::atomic<unsigned> g_threads{0};
thread_local bool t_in_worker = false;
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
    const unsigned n = g_threads.load();
    if (n) return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    // nested calls run inline on the calling worker
    if (workers <= 1 || t_in_worker) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    auto work = [&] {
        t_in_worker = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace slab
