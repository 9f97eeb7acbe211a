#include "fwm/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fwm {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, bool parallel) {
    if (n == 0) return;
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = parallel ? std::min<std::size_t>(n, hw > 0 ? hw : 1) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_index = n;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error || i < first_error_index) {
                    first_error = std::current_exception();
                    first_error_index = i;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace fwm
