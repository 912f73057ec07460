#include "dbbound/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dbbound {

std::size_t worker_count(std::size_t tasks) {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DBBOUND_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) n = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return std::max<std::size_t>(1, std::min(n, tasks));
}

void parallel_tasks(std::size_t tasks,
                    const std::function<void(std::size_t worker, std::size_t task)>& body) {
    if (tasks == 0) return;
    const std::size_t workers = worker_count(tasks);
    if (workers == 1) {
        for (std::size_t t = 0; t < tasks; ++t) body(0, t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&](std::size_t worker) {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks) break;
            try {
                body(worker, t);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dbbound
