#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace deid::orch {

/// At-least-once delivery queue with visibility timeouts.
///
/// A leased message stays invisible until acknowledged; when its lease
/// expires it returns to pending with the attempt counter already
/// incremented at delivery. A message delivered max_attempts times
/// without acknowledgment moves to the dead-letter list.
class WorkQueue {
public:
    struct Message {
        std::uint64_t id = 0;
        std::string payload;
        int attempts = 0;  // deliveries so far
    };

    struct Lease {
        Message message;
        std::uint64_t receipt = 0;
    };

    explicit WorkQueue(std::chrono::milliseconds visibility_timeout = std::chrono::seconds(60),
                       int max_attempts = 3);

    void enqueue(std::string payload);

    /// Next pending message, or nullopt when none is visible.
    std::optional<Lease> lease();

    /// Blocks up to the given duration for a visible message.
    std::optional<Lease> lease_wait(std::chrono::milliseconds wait);

    /// Removes the message permanently. Unknown receipts are ignored
    /// (the lease may have expired and been redelivered).
    void ack(std::uint64_t receipt);

    /// Returns the message to pending immediately (or dead-letters it when
    /// attempts are exhausted).
    void nack(std::uint64_t receipt);

    std::size_t pending() const;
    std::size_t in_flight() const;

    /// Messages not yet acknowledged: pending + in-flight. This is the
    /// depth the autoscaler watches.
    std::size_t outstanding() const;

    std::vector<Message> dead_letters() const;

    /// Moves expired leases back to pending. Also runs inside every
    /// queue operation; exposed so pools can tick it explicitly.
    void reap_expired();

    int max_attempts() const { return max_attempts_; }

    /// Spool persistence for cross-process submit/pool workflows: saves
    /// pending (and expired in-flight) messages as one record per line.
    void save_spool(const std::filesystem::path& file) const;
    static WorkQueue load_spool(const std::filesystem::path& file,
                                std::chrono::milliseconds visibility_timeout,
                                int max_attempts);

private:
    using Clock = std::chrono::steady_clock;

    struct InFlight {
        Message message;
        Clock::time_point deadline;
    };

    void reap_locked(Clock::time_point now);
    void requeue_or_bury_locked(Message m);

    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::chrono::milliseconds visibility_timeout_;
    int max_attempts_;
    std::uint64_t next_id_ = 1;
    std::uint64_t next_receipt_ = 1;
    std::deque<Message> pending_;
    std::map<std::uint64_t, InFlight> in_flight_;  // receipt -> lease
    std::vector<Message> dead_;
};

}  // namespace deid::orch
