#include "lockin/worker.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lockin {

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto body = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int n = static_cast<int>(std::min<std::size_t>(count, workers));
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();

    if (first_error) std::rethrow_exception(first_error);
}

} // namespace lockin
