#include "deid/corpus/benchmark.hpp"

#include "deid/pseudonym/store.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>

namespace deid::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

std::string BenchReport::table() const {
    std::string out =
        "Workers   Filtered  Anonymized    Scrubbed      Errors     Total Bytes   Duration   "
        "Throughput   Efficiency\n";
    for (const auto& row : rows) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%7d %10llu %11llu %11llu %11llu %15llu %9.2fs %10.2f MB/s %12.2f\n",
                      row.workers, static_cast<unsigned long long>(row.report.filtered),
                      static_cast<unsigned long long>(row.report.anonymized),
                      static_cast<unsigned long long>(row.report.scrubbed),
                      static_cast<unsigned long long>(row.report.errors),
                      static_cast<unsigned long long>(row.report.bytes_in),
                      row.report.duration_seconds, row.throughput / 1e6, row.efficiency);
        out += buf;
    }
    return out;
}

std::string BenchReport::to_json() const {
    json arr = json::array();
    for (const auto& row : rows) {
        arr.push_back({{"workers", row.workers},
                       {"filtered", row.report.filtered},
                       {"anonymized", row.report.anonymized},
                       {"scrubbed", row.report.scrubbed},
                       {"errors", row.report.errors},
                       {"total", row.report.total},
                       {"bytes_in", row.report.bytes_in},
                       {"duration_seconds", row.report.duration_seconds},
                       {"throughput_bytes_per_second", row.throughput},
                       {"scaling_efficiency", row.efficiency}});
    }
    return json{{"rows", arr}}.dump(2);
}

BenchReport run_benchmark(const fs::path& corpus_root, const fs::path& ledger_file,
                          const fs::path& work_dir, const BenchOptions& options) {
    auto ledger = read_ledger(ledger_file);

    std::set<std::string> accession_set;
    for (const auto& e : ledger) accession_set.insert(e.accession);
    std::vector<std::string> accessions(accession_set.begin(), accession_set.end());

    fs::create_directories(work_dir);
    orch::DirectoryStore input(work_dir / "input");
    std::size_t ingested = orch::ingest_directory(corpus_root, input);
    if (ingested == 0) throw Error("empty corpus at " + corpus_root.string());

    BenchReport report;
    for (int workers : options.worker_counts) {
        orch::DirectoryStore output(work_dir / ("output-w" + std::to_string(workers)));
        orch::WorkQueue queue(std::chrono::seconds(60), 3);
        pseudonym::MappingStore mappings;  // memory-only; same seed keeps runs identical
        pseudonym::StudyRegistration reg;
        reg.study_id = "bench";
        reg.mode = pseudonym::StudyMode::Irreversible;
        reg.seed = options.study_seed;
        reg.approved_accessions.insert(accessions.begin(), accessions.end());
        mappings.register_study(reg);

        auto submitted =
            orch::submit_request(mappings, "bench", accessions, options.scripts, input, queue);
        if (submitted.enqueued == 0) throw Error("nothing enqueued for benchmark");

        orch::ScriptCache cache;
        orch::PoolOptions pool_options;
        pool_options.policy.min_workers = workers;
        pool_options.policy.max_workers = workers;
        pool_options.policy.per_worker_rate = 1000.0;
        pool_options.policy.delivery_window_seconds = 1.0;
        pool_options.use_measured_rate = false;
        pool_options.cadence = options.cadence;
        pool_options.run_id = "bench-w" + std::to_string(workers);

        orch::PoolStores stores{input, output};
        auto result = orch::run_pool(queue, stores, cache, work_dir / "manifests", pool_options);

        BenchRow row;
        row.workers = workers;
        row.report = result.report;
        row.throughput = result.report.throughput_bytes_per_second();
        if (report.rows.empty()) {
            row.efficiency = 1.0;
        } else {
            const BenchRow& base = report.rows.front();
            double scale = static_cast<double>(row.workers) /
                           std::max(1, base.workers);
            row.efficiency =
                base.throughput > 0 ? row.throughput / (scale * base.throughput) : 0.0;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace deid::corpus
