#include "deid/orchestrator/queue.hpp"

#include "deid/error.hpp"

#include <json.hpp>

#include <fstream>

namespace deid::orch {

using nlohmann::json;

WorkQueue::WorkQueue(std::chrono::milliseconds visibility_timeout, int max_attempts)
    : visibility_timeout_(visibility_timeout), max_attempts_(max_attempts) {}

void WorkQueue::enqueue(std::string payload) {
    {
        std::scoped_lock lock(mu_);
        Message m;
        m.id = next_id_++;
        m.payload = std::move(payload);
        pending_.push_back(std::move(m));
    }
    cv_.notify_one();
}

void WorkQueue::requeue_or_bury_locked(Message m) {
    if (m.attempts >= max_attempts_) {
        dead_.push_back(std::move(m));
    } else {
        pending_.push_back(std::move(m));
        cv_.notify_one();
    }
}

void WorkQueue::reap_locked(Clock::time_point now) {
    for (auto it = in_flight_.begin(); it != in_flight_.end();) {
        if (it->second.deadline <= now) {
            requeue_or_bury_locked(std::move(it->second.message));
            it = in_flight_.erase(it);
        } else {
            ++it;
        }
    }
}

std::optional<WorkQueue::Lease> WorkQueue::lease() {
    std::scoped_lock lock(mu_);
    auto now = Clock::now();
    reap_locked(now);
    if (pending_.empty()) return std::nullopt;
    Message m = std::move(pending_.front());
    pending_.pop_front();
    m.attempts += 1;
    Lease lease;
    lease.receipt = next_receipt_++;
    lease.message = m;
    in_flight_[lease.receipt] = InFlight{std::move(m), now + visibility_timeout_};
    return lease;
}

std::optional<WorkQueue::Lease> WorkQueue::lease_wait(std::chrono::milliseconds wait) {
    auto deadline = Clock::now() + wait;
    while (true) {
        if (auto l = lease()) return l;
        std::unique_lock lock(mu_);
        if (cv_.wait_until(lock, deadline, [this] { return !pending_.empty(); })) {
            lock.unlock();
            continue;  // race to lease it
        }
        return std::nullopt;
    }
}

void WorkQueue::ack(std::uint64_t receipt) {
    std::scoped_lock lock(mu_);
    in_flight_.erase(receipt);
}

void WorkQueue::nack(std::uint64_t receipt) {
    std::scoped_lock lock(mu_);
    auto it = in_flight_.find(receipt);
    if (it == in_flight_.end()) return;
    Message m = std::move(it->second.message);
    in_flight_.erase(it);
    requeue_or_bury_locked(std::move(m));
}

std::size_t WorkQueue::pending() const {
    std::scoped_lock lock(mu_);
    const_cast<WorkQueue*>(this)->reap_locked(Clock::now());
    return pending_.size();
}

std::size_t WorkQueue::in_flight() const {
    std::scoped_lock lock(mu_);
    return in_flight_.size();
}

std::size_t WorkQueue::outstanding() const {
    std::scoped_lock lock(mu_);
    return pending_.size() + in_flight_.size();
}

std::vector<WorkQueue::Message> WorkQueue::dead_letters() const {
    std::scoped_lock lock(mu_);
    return dead_;
}

void WorkQueue::reap_expired() {
    std::scoped_lock lock(mu_);
    reap_locked(Clock::now());
}

void WorkQueue::save_spool(const std::filesystem::path& file) const {
    std::scoped_lock lock(mu_);
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << R"({"format":"deid-queue-spool","version":1})" << "\n";
        auto dump = [&out](const Message& m) {
            json rec{{"payload", m.payload}, {"attempts", m.attempts}};
            out << rec.dump() << "\n";
        };
        for (const auto& m : pending_) dump(m);
        for (const auto& [receipt, fl] : in_flight_) dump(fl.message);
        out.flush();
        if (!out) throw Error("queue spool write failed: " + file.string());
    }
    std::filesystem::rename(tmp, file);
}

WorkQueue WorkQueue::load_spool(const std::filesystem::path& file,
                                std::chrono::milliseconds visibility_timeout, int max_attempts) {
    WorkQueue q(visibility_timeout, max_attempts);
    if (!std::filesystem::exists(file)) return q;
    std::ifstream in(file);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;  // header
        }
        json rec = json::parse(line);
        Message m;
        m.id = q.next_id_++;
        m.payload = rec.at("payload").get<std::string>();
        m.attempts = rec.value("attempts", 0);
        q.pending_.push_back(std::move(m));
    }
    return q;
}

}  // namespace deid::orch
