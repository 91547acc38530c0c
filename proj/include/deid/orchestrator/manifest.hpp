#pragma once

#include "deid/dicom/pixels.hpp"
#include "deid/engine/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace deid::orch {

/// One per-instance record of what the pipeline did. The accession field
/// carries the anonymized code for irreversible studies and the real one
/// for reversible studies; original attribute values are never recorded.
struct ManifestEntry {
    std::string study_id;
    std::string accession;
    std::string instance_id;
    std::string outcome;     // filtered | anonymized | scrubbed+anonymized | error
    std::string detail;
    std::string error_kind;
    std::vector<dicom::Rect> rects;
    std::map<std::string, int> transform_counts;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;
    std::string worker_id;
    std::int64_t started_ms = 0;
    std::int64_t finished_ms = 0;

    std::string to_json() const;
    static ManifestEntry from_json(const std::string& text);

    static ManifestEntry from_outcome(const engine::Outcome& outcome);

    /// Consolidation key: one logical entry per input instance.
    std::string logical_key() const { return study_id + "/" + accession + "/" + instance_id; }
};

/// Append-only manifest log with a schema version header. Appends from
/// any thread funnel through one writer guarded here, each record flushed
/// before append() returns.
class ManifestWriter {
public:
    explicit ManifestWriter(std::filesystem::path file);

    void append(const ManifestEntry& entry);

    const std::filesystem::path& file() const { return file_; }

    static std::vector<ManifestEntry> read(const std::filesystem::path& file);

private:
    std::filesystem::path file_;
    std::mutex mu_;
    std::ofstream out_;
};

/// Keeps the last record per logical key; redeliveries after crashes leave
/// duplicate appends that consolidate to one logical success.
std::vector<ManifestEntry> consolidate(const std::vector<ManifestEntry>& entries);

void write_consolidated(const std::filesystem::path& file,
                        const std::vector<ManifestEntry>& entries);

/// The run-level accounting the pipeline reports: outcome counts, bytes,
/// duration, aggregate throughput.
struct AggregateReport {
    std::uint64_t filtered = 0;
    std::uint64_t anonymized = 0;
    std::uint64_t scrubbed = 0;
    std::uint64_t errors = 0;
    std::uint64_t total = 0;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;
    double duration_seconds = 0;

    double throughput_bytes_per_second() const {
        return duration_seconds > 0 ? static_cast<double>(bytes_in) / duration_seconds : 0.0;
    }

    static AggregateReport from_entries(const std::vector<ManifestEntry>& entries,
                                        double duration_seconds);

    std::string to_json() const;

    /// Aligned one-row text table mirroring the benchmark report shape.
    std::string table() const;
};

}  // namespace deid::orch
