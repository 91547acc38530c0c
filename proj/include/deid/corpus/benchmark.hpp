#pragma once

#include "deid/corpus/generator.hpp"
#include "deid/orchestrator/manifest.hpp"
#include "deid/orchestrator/pool.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace deid::corpus {

struct BenchRow {
    int workers = 0;
    orch::AggregateReport report;
    double throughput = 0;  // input bytes per second
    double efficiency = 0;  // throughput / (workers * throughput at the first row)
};

struct BenchReport {
    std::vector<BenchRow> rows;

    std::string table() const;
    std::string to_json() const;
};

struct BenchOptions {
    orch::ScriptRefs scripts;
    std::vector<int> worker_counts{1, 2, 4};
    std::chrono::milliseconds cadence{25};
    std::uint64_t study_seed = 1;
};

/// Replays the corpus through the full queue/pool pipeline once per
/// worker count. Outcome counts are invariant across worker counts; only
/// duration moves. Efficiency is measured against the first row.
BenchReport run_benchmark(const std::filesystem::path& corpus_root,
                          const std::filesystem::path& ledger_file,
                          const std::filesystem::path& work_dir, const BenchOptions& options);

}  // namespace deid::corpus
