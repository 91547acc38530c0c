#include "deid/orchestrator/manifest.hpp"

#include "deid/error.hpp"

#include <json.hpp>

#include <cstdio>

namespace deid::orch {

using nlohmann::json;

namespace {
constexpr std::string_view kHeader = R"({"format":"deid-manifest","version":1})";

json rects_to_json(const std::vector<dicom::Rect>& rects) {
    json arr = json::array();
    for (const auto& r : rects) arr.push_back({r.x, r.y, r.w, r.h});
    return arr;
}

std::vector<dicom::Rect> rects_from_json(const json& arr) {
    std::vector<dicom::Rect> out;
    for (const auto& r : arr) {
        out.push_back(dicom::Rect{r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(),
                                  r.at(3).get<int>()});
    }
    return out;
}
}  // namespace

std::string ManifestEntry::to_json() const {
    json j{{"study", study_id},
           {"accession", accession},
           {"instance", instance_id},
           {"outcome", outcome},
           {"detail", detail},
           {"error_kind", error_kind},
           {"rects", rects_to_json(rects)},
           {"transforms", transform_counts},
           {"bytes_in", bytes_in},
           {"bytes_out", bytes_out},
           {"worker", worker_id},
           {"started_ms", started_ms},
           {"finished_ms", finished_ms}};
    return j.dump();
}

ManifestEntry ManifestEntry::from_json(const std::string& text) {
    json j = json::parse(text);
    ManifestEntry e;
    e.study_id = j.value("study", "");
    e.accession = j.value("accession", "");
    e.instance_id = j.value("instance", "");
    e.outcome = j.value("outcome", "");
    e.detail = j.value("detail", "");
    e.error_kind = j.value("error_kind", "");
    if (j.contains("rects")) e.rects = rects_from_json(j.at("rects"));
    if (j.contains("transforms")) {
        e.transform_counts = j.at("transforms").get<std::map<std::string, int>>();
    }
    e.bytes_in = j.value("bytes_in", std::uint64_t{0});
    e.bytes_out = j.value("bytes_out", std::uint64_t{0});
    e.worker_id = j.value("worker", "");
    e.started_ms = j.value("started_ms", std::int64_t{0});
    e.finished_ms = j.value("finished_ms", std::int64_t{0});
    return e;
}

ManifestEntry ManifestEntry::from_outcome(const engine::Outcome& outcome) {
    ManifestEntry e;
    e.outcome = std::string(engine::outcome_name(outcome.kind));
    e.detail = outcome.detail;
    e.error_kind = std::string(engine::error_kind_name(outcome.error));
    e.rects = outcome.rects;
    for (const auto& t : outcome.transforms) {
        e.transform_counts[t.action] += 1;
    }
    e.bytes_in = outcome.bytes_in;
    e.bytes_out = outcome.bytes_out;
    return e;
}

ManifestWriter::ManifestWriter(std::filesystem::path file) : file_(std::move(file)) {
    if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
    bool fresh = !std::filesystem::exists(file_) || std::filesystem::file_size(file_) == 0;
    out_.open(file_, std::ios::app);
    if (!out_) throw Error("cannot open manifest: " + file_.string());
    if (fresh) {
        out_ << kHeader << "\n";
        out_.flush();
    }
}

void ManifestWriter::append(const ManifestEntry& entry) {
    std::scoped_lock lock(mu_);
    out_ << entry.to_json() << "\n";
    out_.flush();
    if (!out_) throw Error("manifest write failed: " + file_.string());
}

std::vector<ManifestEntry> ManifestWriter::read(const std::filesystem::path& file) {
    std::vector<ManifestEntry> out;
    std::ifstream in(file);
    if (!in) throw Error("cannot read manifest: " + file.string());
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;  // header
        }
        out.push_back(ManifestEntry::from_json(line));
    }
    return out;
}

std::vector<ManifestEntry> consolidate(const std::vector<ManifestEntry>& entries) {
    std::map<std::string, std::size_t> last;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        last[entries[i].logical_key()] = i;
    }
    std::vector<std::size_t> order;
    order.reserve(last.size());
    for (const auto& [key, index] : last) order.push_back(index);
    std::sort(order.begin(), order.end());
    std::vector<ManifestEntry> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back(entries[i]);
    return out;
}

void write_consolidated(const std::filesystem::path& file,
                        const std::vector<ManifestEntry>& entries) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << kHeader << "\n";
        for (const auto& e : entries) out << e.to_json() << "\n";
        out.flush();
        if (!out) throw Error("manifest write failed: " + file.string());
    }
    std::filesystem::rename(tmp, file);
}

AggregateReport AggregateReport::from_entries(const std::vector<ManifestEntry>& entries,
                                              double duration_seconds) {
    AggregateReport r;
    r.duration_seconds = duration_seconds;
    for (const auto& e : entries) {
        if (e.outcome == "filtered") ++r.filtered;
        else if (e.outcome == "anonymized") ++r.anonymized;
        else if (e.outcome == "scrubbed+anonymized") ++r.scrubbed;
        else ++r.errors;
        r.bytes_in += e.bytes_in;
        r.bytes_out += e.bytes_out;
        ++r.total;
    }
    return r;
}

std::string AggregateReport::to_json() const {
    json j{{"filtered", filtered},
           {"anonymized", anonymized},
           {"scrubbed", scrubbed},
           {"errors", errors},
           {"total", total},
           {"bytes_in", bytes_in},
           {"bytes_out", bytes_out},
           {"duration_seconds", duration_seconds},
           {"throughput_bytes_per_second", throughput_bytes_per_second()}};
    return j.dump();
}

std::string AggregateReport::table() const {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%10llu %12llu %10llu %8llu %14llu %10.2fs %12.0f B/s",
                  static_cast<unsigned long long>(filtered),
                  static_cast<unsigned long long>(anonymized),
                  static_cast<unsigned long long>(scrubbed),
                  static_cast<unsigned long long>(errors),
                  static_cast<unsigned long long>(bytes_in), duration_seconds,
                  throughput_bytes_per_second());
    return std::string("  Filtered   Anonymized   Scrubbed   Errors    Total Bytes   Duration     Throughput\n") +
           buf;
}

}  // namespace deid::orch
