#pragma once

#include <cstddef>
#include <functional>

namespace dbbound {

// Worker count: DBBOUND_THREADS if set to a positive integer, otherwise
// std::thread::hardware_concurrency(), never more than `tasks`.
std::size_t worker_count(std::size_t tasks);

// Runs body(worker, task) for every task in [0, tasks). Tasks are handed
// out dynamically; worker ids are dense in [0, worker_count(tasks)).
// The first exception thrown by any task is rethrown after all workers stop.
void parallel_tasks(std::size_t tasks,
                    const std::function<void(std::size_t worker, std::size_t task)>& body);

}  // namespace dbbound
