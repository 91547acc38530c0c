#include "deid/orchestrator/scale.hpp"

#include <algorithm>
#include <cmath>

namespace deid::orch {

int autoscale_tick(const ScalePolicy& policy, std::uint64_t queue_depth, int current_workers) {
    (void)current_workers;  // the formula is stateless; spawning is the pool's job
    if (queue_depth == 0) return 0;

    double capacity_per_worker = policy.per_worker_rate * policy.delivery_window_seconds;
    if (capacity_per_worker <= 0) return policy.max_workers;

    double needed = std::ceil(static_cast<double>(queue_depth) / capacity_per_worker);
    int desired = needed > static_cast<double>(policy.max_workers)
                      ? policy.max_workers
                      : static_cast<int>(needed);
    return std::clamp(desired, std::max(policy.min_workers, 1), policy.max_workers);
}

}  // namespace deid::orch
