#include "botdrift/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace botdrift {

std::size_t thread_budget() {
    if (const char* env = std::getenv("BOTDRIFT_THREADS"); env != nullptr && *env != '\0') {
        try {
            const long v = std::stol(env);
            if (v >= 1) {
                return static_cast<std::size_t>(v);
            }
        } catch (...) {
        }
        return 1;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads) {
    const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::atomic<bool> stop{false};

    auto work = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                stop = true;
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(work);
        }
        work();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace botdrift
