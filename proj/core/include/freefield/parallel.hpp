#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace freefield {

/// Worker count: FREEFIELD_WORKERS env var, else hardware concurrency.
int default_workers();

/// Chunked parallel map over [0, count). The body receives the item
/// index, so results are deterministic regardless of the schedule.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body,
                  int workers = 0);

} // namespace freefield
