#pragma once

#include "deid/orchestrator/manifest.hpp"
#include "deid/orchestrator/object_store.hpp"
#include "deid/orchestrator/queue.hpp"
#include "deid/orchestrator/scale.hpp"
#include "deid/orchestrator/work_item.hpp"
#include "deid/pseudonym/store.hpp"
#include "deid/rules/scripts.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace deid::orch {

/// Parses each referenced script file once; parsed rule sets are
/// immutable and shared by every worker.
class ScriptCache {
public:
    const rules::RuleSet& get(const ScriptRefs& refs);

private:
    std::mutex mu_;
    std::map<ScriptRefs, std::unique_ptr<rules::RuleSet>> cache_;
};

struct PoolOptions {
    ScalePolicy policy;
    std::chrono::milliseconds cadence{5000};
    std::chrono::milliseconds visibility_timeout{60000};
    int max_attempts = 3;

    /// Rate assumed before enough items finished to measure one; after
    /// warmup_items completions the measured per-worker rate feeds the
    /// autoscaler instead.
    double initial_rate_estimate = 4.0;
    int warmup_items = 30;
    bool use_measured_rate = true;

    std::string run_id = "run";
};

/// Test hook simulating worker death. Called at the named points
/// ("start", "after-write", "before-ack"); returning true makes the
/// worker abandon the item without acknowledging and exit.
using FaultHook = std::function<bool(const WorkItem&, std::string_view point)>;

struct PoolStores {
    ObjectStore& input;
    ObjectStore& output;
};

struct SubmitReport {
    std::size_t enqueued = 0;
    std::vector<std::pair<std::string, std::string>> rejected;  // accession, reason
};

/// Validates each accession, creates (or fetches) its pseudonym mapping,
/// and enqueues one self-sufficient WorkItem carrying the anonymized
/// parameters. Ineligible accessions are reported, not enqueued.
SubmitReport submit_request(pseudonym::MappingStore& mappings, const std::string& study_id,
                            const std::vector<std::string>& accessions, const ScriptRefs& scripts,
                            const ObjectStore& input, WorkQueue& queue,
                            std::string_view input_prefix = "inbox");

/// Bulk-ingests dir/<accession>/<file> trees into the input store under
/// <prefix>/<accession>/<file>. Returns the object count.
std::size_t ingest_directory(const std::filesystem::path& dir, ObjectStore& input,
                             std::string_view prefix = "inbox");

struct WorkerStats {
    std::size_t processed = 0;
    bool killed = false;
};

/// Consumes the queue until it drains (or the stop flag is set): fetch
/// inputs, run the pipeline, write outputs keyed by anonymized ids,
/// append manifest entries, acknowledge. Write-then-ack ordering plus
/// idempotent output keys make redelivery after a crash converge.
WorkerStats run_worker(WorkQueue& queue, PoolStores stores, ScriptCache& scripts,
                       ManifestWriter& manifest, const std::string& worker_id,
                       const std::atomic<bool>* stop = nullptr, const FaultHook& fault = {},
                       std::atomic<std::size_t>* processed_sink = nullptr,
                       std::chrono::milliseconds idle_wait = std::chrono::milliseconds(25));

struct PoolResult {
    AggregateReport report;
    std::vector<ManifestEntry> entries;  // consolidated
    std::filesystem::path manifest_log;
    std::filesystem::path manifest_file;
    std::filesystem::path report_file;
    int peak_workers = 0;
    std::size_t dead_lettered = 0;
    double duration_seconds = 0;
};

/// Drives an autoscaled worker pool until the queue is empty and every
/// lease is resolved, then consolidates the manifest and writes the
/// aggregate report. Scale-to-zero: returns immediately on an empty
/// queue.
PoolResult run_pool(WorkQueue& queue, PoolStores stores, ScriptCache& scripts,
                    const std::filesystem::path& manifest_dir, PoolOptions options,
                    const FaultHook& fault = {});

}  // namespace deid::orch
