#pragma once

#include <cstdint>

namespace deid::orch {

/// Autoscaling inputs: how fast one worker drains messages and how soon
/// the request must be delivered.
struct ScalePolicy {
    double per_worker_rate = 1.0;        // messages per second per worker
    double delivery_window_seconds = 3600.0;
    int min_workers = 1;
    int max_workers = 4;
};

/// Desired worker count for the observed queue depth:
///   depth == 0  ->  0 (instances are deleted once the queue is empty)
///   otherwise   ->  clamp(ceil(depth / (rate * window)), min, max)
/// Monotone nondecreasing in depth.
int autoscale_tick(const ScalePolicy& policy, std::uint64_t queue_depth, int current_workers);

}  // namespace deid::orch
