#pragma once

#include <cstdint>
#include <functional>

namespace gwburn {

/// Hardware concurrency clamped to [1, 8].
int default_worker_count();

/// Runs body(trial) for every trial in [0, trials) across a worker pool.
/// Bodies must write only to their own trial's slot; the caller reduces in
/// trial order afterwards, so results are independent of scheduling. The
/// first exception thrown by any body is rethrown after all workers join.
void parallel_for_trials(std::int64_t trials, int workers,
                         const std::function<void(std::int64_t)>& body);

}  // namespace gwburn
