#pragma once

#include "deid/error.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace deid::pseudonym {

struct DuplicateStudy : Error {
    using Error::Error;
};
struct UnknownStudy : Error {
    using Error::Error;
};
struct IneligibleAccession : Error {
    using Error::Error;
};
/// Raised by resolve() on an irreversible study: the anonymized codes can
/// never be linked back to patient identifiers.
struct IrreversibleStudy : Error {
    using Error::Error;
};
struct ReversibleStudy : Error {
    using Error::Error;
};
struct UnknownAnonId : Error {
    using Error::Error;
};

enum class StudyMode { Reversible, Irreversible };

std::string_view study_mode_name(StudyMode m);
std::optional<StudyMode> study_mode_from(std::string_view name);

struct StudyRegistration {
    std::string study_id;
    StudyMode mode = StudyMode::Irreversible;
    std::set<std::string> approved_accessions;
    std::uint64_t seed = 0;
    int delivery_window_seconds = 3600;
};

/// Persistent pseudonym record. In irreversible mode the real identifiers
/// are erased by purge_links; the anonymized ids and jitter survive so
/// re-delivery stays consistent.
struct Mapping {
    std::string study_id;
    std::string real_accession;
    std::string anon_accession;
    std::string real_mrn;
    std::string anon_mrn;
    int jitter_days = 0;
    bool purged = false;
};

struct Eligibility {
    bool eligible = false;
    std::string reason;
};

/// Durable store of study registrations and pseudonym mappings backed by
/// an append-only record log plus an in-memory index. A mapping
/// acknowledged to a caller has been flushed to the log. purge_links
/// compacts the log so erased identifiers leave no trace in the file.
///
/// Construction with an empty path yields a memory-only store.
class MappingStore {
public:
    MappingStore() = default;
    explicit MappingStore(std::filesystem::path store_file,
                          std::filesystem::path exclusion_file = {});

    void register_study(const StudyRegistration& reg);
    bool has_study(const std::string& study_id) const;
    StudyRegistration study(const std::string& study_id) const;

    /// Eligible iff approved for the study and not globally excluded.
    Eligibility validate_accession(const std::string& study_id,
                                   const std::string& accession) const;

    /// First call creates and persists; later calls return the identical
    /// record. Generation is a pure function of (study seed, real ids):
    /// regenerating a store from the same inputs yields the same codes.
    /// Atomic under concurrent calls with identical keys.
    Mapping get_or_create_mapping(const std::string& study_id, const std::string& real_accession,
                                  const std::string& real_mrn);

    struct RealIds {
        std::string accession;
        std::string mrn;
    };

    /// Reversible studies only.
    RealIds resolve(const std::string& study_id, const std::string& anon_accession) const;

    /// Erases real identifiers from every mapping of an irreversible
    /// study, in memory and in the compacted log. Idempotent; returns the
    /// number of mappings purged this call.
    std::size_t purge_links(const std::string& study_id);

    std::vector<Mapping> mappings_for(const std::string& study_id) const;

    const std::set<std::string>& exclusion_list() const { return excluded_; }
    void exclude(const std::string& accession);

private:
    struct StudyState {
        StudyRegistration reg;
        // keyed by real accession; empty key space after purge
        std::map<std::string, Mapping> by_real;
        std::map<std::string, std::string> anon_to_real;
        std::set<std::string> anon_accessions;
        std::map<std::string, std::pair<std::string, int>> mrn_codes;  // real mrn -> (anon mrn, jitter)
        std::vector<Mapping> purged_mappings;
        bool purged = false;
    };

    Mapping derive_mapping_locked(const StudyState& st, const std::string& real_accession,
                                  const std::string& real_mrn) const;
    void append_record_locked(const std::string& line);
    void rewrite_log_locked();
    void load_locked();

    mutable std::recursive_mutex mu_;
    std::filesystem::path store_file_;
    std::map<std::string, StudyState> studies_;
    std::set<std::string> excluded_;
};

}  // namespace deid::pseudonym
