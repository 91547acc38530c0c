#include "deid/orchestrator/pool.hpp"

#include "deid/dicom/file_format.hpp"
#include "deid/engine/pipeline.hpp"
#include "deid/rules/evaluate.hpp"

#include <fstream>
#include <thread>

namespace deid::orch {

namespace fs = std::filesystem;

namespace {

std::string read_text_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read script: " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::string basename_of(std::string_view key) {
    auto slash = key.rfind('/');
    std::string name(slash == std::string_view::npos ? key : key.substr(slash + 1));
    auto dot = name.rfind('.');
    if (dot != std::string::npos && dot > 0) name.resize(dot);
    return name;
}

// One logical instance id per input, stable across redeliveries: the
// anonymized SOP instance UID when an output exists, the input basename
// otherwise.
std::string instance_id_for(const WorkItem& item, std::string_view input_key,
                            const engine::InstanceResult& result) {
    if (result.output) {
        if (auto uid = result.output->string_value(dicom::tags::kSopInstanceUid); uid && !uid->empty()) {
            return *uid;
        }
        return rules::hash_uid(item.params.study_salt, input_key);
    }
    return basename_of(input_key);
}

std::string accession_label(const WorkItem& item) {
    return item.mode == "reversible" ? item.real_accession : item.anon_accession;
}

}  // namespace

const rules::RuleSet& ScriptCache::get(const ScriptRefs& refs) {
    std::scoped_lock lock(mu_);
    auto it = cache_.find(refs);
    if (it != cache_.end()) return *it->second;

    auto rs = std::make_unique<rules::RuleSet>();
    rs->filter = rules::parse_filter_script(read_text_file(refs.filter));
    rs->scrub = rules::parse_scrub_script(read_text_file(refs.scrub));
    rs->anon = rules::parse_anon_script(read_text_file(refs.anon));
    auto [pos, inserted] = cache_.emplace(refs, std::move(rs));
    return *pos->second;
}

std::size_t ingest_directory(const fs::path& dir, ObjectStore& input, std::string_view prefix) {
    if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
    std::size_t count = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string rel = fs::relative(entry.path(), dir).generic_string();
        std::ifstream in(entry.path(), std::ios::binary);
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
        input.put(std::string(prefix) + "/" + rel, bytes);
        ++count;
    }
    return count;
}

SubmitReport submit_request(pseudonym::MappingStore& mappings, const std::string& study_id,
                            const std::vector<std::string>& accessions, const ScriptRefs& scripts,
                            const ObjectStore& input, WorkQueue& queue,
                            std::string_view input_prefix) {
    auto reg = mappings.study(study_id);  // throws UnknownStudy
    SubmitReport report;

    for (const auto& accession : accessions) {
        auto eligibility = mappings.validate_accession(study_id, accession);
        if (!eligibility.eligible) {
            report.rejected.emplace_back(accession, eligibility.reason);
            continue;
        }
        auto inputs = input.list(std::string(input_prefix) + "/" + accession + "/");
        if (inputs.empty()) {
            report.rejected.emplace_back(accession, "no input objects");
            continue;
        }

        // The patient identifier behind an accession lives with the
        // archive; at this boundary the accession itself keys the
        // patient record unless the caller ingested one. Desk-scale
        // corpora store the MRN alongside the accession.
        std::string mrn = accession;
        if (auto mrn_key = std::string(input_prefix) + "/" + accession + "/.mrn";
            input.exists(mrn_key)) {
            auto bytes = input.get(mrn_key);
            mrn.assign(bytes.begin(), bytes.end());
            while (!mrn.empty() && (mrn.back() == '\n' || mrn.back() == '\r')) mrn.pop_back();
        }
        // Hidden bookkeeping objects are not instances.
        std::erase_if(inputs, [](const std::string& k) {
            auto slash = k.rfind('/');
            return slash != std::string::npos && slash + 1 < k.size() && k[slash + 1] == '.';
        });

        auto mapping = mappings.get_or_create_mapping(study_id, accession, mrn);

        WorkItem item;
        item.study_id = study_id;
        item.mode = std::string(pseudonym::study_mode_name(reg.mode));
        item.real_accession = accession;
        item.anon_accession = mapping.anon_accession;
        item.scripts = scripts;
        item.params.accession = mapping.anon_accession;
        item.params.mrn = mapping.anon_mrn;
        item.params.jitter_days = mapping.jitter_days;
        item.params.study_salt = study_id + ":" + std::to_string(reg.seed);
        item.input_keys = std::move(inputs);
        queue.enqueue(item.to_json());
        ++report.enqueued;
    }
    return report;
}

namespace {

// Processes one leased work item end to end. Returns false when the
// fault hook killed the worker mid-item (no ack happened).
bool process_item(const WorkItem& item, WorkQueue& queue, std::uint64_t receipt, PoolStores stores,
                  ScriptCache& scripts, ManifestWriter& manifest, const std::string& worker_id,
                  const FaultHook& fault) {
    if (fault && fault(item, "start")) return false;

    const rules::RuleSet& rules = scripts.get(item.scripts);

    struct PendingEntry {
        ManifestEntry entry;
    };
    std::vector<PendingEntry> entries;
    entries.reserve(item.input_keys.size());

    for (const auto& key : item.input_keys) {
        std::int64_t started = now_ms();
        engine::InstanceResult result;
        try {
            auto bytes = stores.input.get(key);
            result = engine::deid_bytes(bytes, rules, item.params);
        } catch (const std::exception& e) {
            result.outcome = engine::Outcome{engine::OutcomeKind::Error, e.what(),
                                             engine::ErrorKind::ParseError, {}, {}, 0, 0};
        }

        ManifestEntry entry = ManifestEntry::from_outcome(result.outcome);
        entry.study_id = item.study_id;
        entry.accession = accession_label(item);
        entry.instance_id = instance_id_for(item, key, result);
        entry.worker_id = worker_id;
        entry.started_ms = started;

        if (result.output) {
            auto out_bytes = dicom::write_file(*result.output);
            entry.bytes_out = out_bytes.size();
            std::string out_key =
                item.study_id + "/" + item.anon_accession + "/" + entry.instance_id + ".dcm";
            stores.output.put(out_key, out_bytes);
        }
        entry.finished_ms = now_ms();
        entries.push_back({std::move(entry)});
    }

    if (fault && fault(item, "after-write")) return false;

    for (auto& p : entries) manifest.append(p.entry);

    if (fault && fault(item, "before-ack")) return false;

    queue.ack(receipt);
    return true;
}

}  // namespace

WorkerStats run_worker(WorkQueue& queue, PoolStores stores, ScriptCache& scripts,
                       ManifestWriter& manifest, const std::string& worker_id,
                       const std::atomic<bool>* stop, const FaultHook& fault,
                       std::atomic<std::size_t>* processed_sink,
                       std::chrono::milliseconds idle_wait) {
    WorkerStats stats;
    while (true) {
        if (stop && stop->load()) break;
        auto lease = queue.lease_wait(idle_wait);
        if (!lease) {
            if (stop) continue;  // pool decides when we retire
            if (queue.outstanding() == 0) break;
            continue;
        }

        WorkItem item;
        try {
            item = WorkItem::from_json(lease->message.payload);
        } catch (const std::exception&) {
            queue.nack(lease->receipt);  // undecodable payload: bury via attempts
            continue;
        }

        bool completed = false;
        try {
            completed = process_item(item, queue, lease->receipt, stores, scripts, manifest,
                                     worker_id, fault);
        } catch (const std::exception&) {
            queue.nack(lease->receipt);
            continue;
        }

        if (!completed) {
            // Simulated crash: abandon the lease; expiry redelivers.
            stats.killed = true;
            return stats;
        }
        ++stats.processed;
        if (processed_sink) processed_sink->fetch_add(1);
    }
    return stats;
}

PoolResult run_pool(WorkQueue& queue, PoolStores stores, ScriptCache& scripts,
                    const fs::path& manifest_dir, PoolOptions options, const FaultHook& fault) {
    fs::create_directories(manifest_dir);
    PoolResult result;
    result.manifest_log = manifest_dir / (options.run_id + ".log.ndjson");
    result.manifest_file = manifest_dir / (options.run_id + ".manifest.ndjson");
    result.report_file = manifest_dir / (options.run_id + ".report.json");

    ManifestWriter writer(result.manifest_log);

    struct WorkerSlot {
        std::thread thread;
        std::shared_ptr<std::atomic<bool>> stop;
        std::shared_ptr<std::atomic<bool>> done;
    };
    std::vector<WorkerSlot> workers;
    std::atomic<std::size_t> processed{0};

    auto started_at = std::chrono::steady_clock::now();
    double worker_seconds = 0;
    int worker_seq = 0;

    auto spawn = [&] {
        WorkerSlot slot;
        slot.stop = std::make_shared<std::atomic<bool>>(false);
        slot.done = std::make_shared<std::atomic<bool>>(false);
        std::string id = options.run_id + "-w" + std::to_string(worker_seq++);
        auto stop = slot.stop;
        auto done = slot.done;
        slot.thread = std::thread([&, id, stop, done] {
            run_worker(queue, stores, scripts, writer, id, stop.get(), fault, &processed);
            done->store(true);
        });
        workers.push_back(std::move(slot));
        result.peak_workers = std::max(result.peak_workers, static_cast<int>(workers.size()));
    };

    auto reap_finished = [&] {
        for (auto it = workers.begin(); it != workers.end();) {
            if (it->done->load()) {
                it->thread.join();
                it = workers.erase(it);
            } else {
                ++it;
            }
        }
    };

    while (true) {
        queue.reap_expired();
        reap_finished();

        std::size_t depth = queue.outstanding();
        if (depth == 0) break;

        ScalePolicy policy = options.policy;
        if (options.use_measured_rate && processed.load() >= static_cast<std::size_t>(options.warmup_items) &&
            worker_seconds > 0) {
            policy.per_worker_rate = static_cast<double>(processed.load()) / worker_seconds;
        } else if (options.use_measured_rate) {
            policy.per_worker_rate = options.initial_rate_estimate;
        }

        int desired = autoscale_tick(policy, depth, static_cast<int>(workers.size()));
        while (static_cast<int>(workers.size()) < desired) spawn();
        // Retire surplus workers; they exit after their current item.
        for (int i = desired; i < static_cast<int>(workers.size()); ++i) {
            workers[static_cast<std::size_t>(i)].stop->store(true);
        }

        worker_seconds += static_cast<double>(workers.size()) *
                          std::chrono::duration<double>(options.cadence).count();
        std::this_thread::sleep_for(options.cadence);
    }

    for (auto& w : workers) w.stop->store(true);
    for (auto& w : workers) w.thread.join();
    workers.clear();

    // Exhausted items get terminal Error records.
    for (const auto& dead : queue.dead_letters()) {
        ++result.dead_lettered;
        try {
            WorkItem item = WorkItem::from_json(dead.payload);
            for (const auto& key : item.input_keys) {
                ManifestEntry entry;
                entry.study_id = item.study_id;
                entry.accession = accession_label(item);
                entry.instance_id = basename_of(key);
                entry.outcome = "error";
                entry.error_kind = "dead-letter";
                entry.detail = "attempts exhausted (" + std::to_string(dead.attempts) + ")";
                entry.worker_id = "pool";
                entry.started_ms = now_ms();
                entry.finished_ms = entry.started_ms;
                writer.append(entry);
            }
        } catch (const std::exception&) {
            ManifestEntry entry;
            entry.outcome = "error";
            entry.error_kind = "dead-letter";
            entry.detail = "undecodable work item";
            entry.instance_id = "message-" + std::to_string(dead.id);
            entry.worker_id = "pool";
            writer.append(entry);
        }
    }

    result.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_at).count();

    result.entries = consolidate(ManifestWriter::read(result.manifest_log));
    write_consolidated(result.manifest_file, result.entries);
    result.report = AggregateReport::from_entries(result.entries, result.duration_seconds);
    {
        std::ofstream out(result.report_file, std::ios::trunc);
        out << result.report.to_json() << "\n";
    }
    return result;
}

}  // namespace deid::orch
