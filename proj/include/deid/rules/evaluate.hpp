#pragma once

#include "deid/dicom/dataset.hpp"
#include "deid/rules/scripts.hpp"

#include <string>
#include <utility>
#include <vector>

namespace deid::rules {

struct FilterDecision {
    bool accepted = true;
    std::string reason;  // set when rejected
};

/// First matching rule wins; the script's default action applies when no
/// rule matches. Pure function of (script, dataset).
FilterDecision evaluate_filter(const FilterScript& fs, const dicom::DataSet& ds);

struct ScrubLookup {
    enum class Kind { Rects, NoRule, WhitelistReject };
    Kind kind = Kind::NoRule;
    std::vector<dicom::Rect> rects;
};

/// Exact key match on (modality, make, model, rows, cols). A miss on a
/// whitelist-only modality rejects the instance; a miss elsewhere lets it
/// proceed unscrubbed.
ScrubLookup lookup_scrub(const ScrubScript& ss, const dicom::DataSet& ds);

/// What happened to one tag during anonymization. Records presence only,
/// never the original value.
struct TransformRecord {
    dicom::Tag tag;
    std::string action;
    bool had_value = false;
};

/// Applies the per-tag action table and returns the transformed dataset.
/// Unlisted tags follow default_action, private tags private_action.
std::pair<dicom::DataSet, std::vector<TransformRecord>> apply_anon(const AnonScript& as,
                                                                   const dicom::DataSet& ds,
                                                                   const ScriptParams& p);

/// Deterministic UID replacement: "2.25." + decimal digest of
/// (salt, input UID), at most 64 chars. Equal inputs with equal salts map
/// to equal outputs.
std::string hash_uid(std::string_view salt, std::string_view uid);

/// Shifts a DA value (YYYYMMDD) by a signed number of calendar days.
/// Returns nullopt for unparseable dates.
std::optional<std::string> shift_date(std::string_view da, int days);

/// Shifts the date part of a DT value, leaving time and offset intact.
std::optional<std::string> shift_datetime(std::string_view dt, int days);

}  // namespace deid::rules
