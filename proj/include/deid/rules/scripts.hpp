#pragma once

#include "deid/dicom/pixels.hpp"
#include "deid/dicom/tag.hpp"
#include "deid/error.hpp"

#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace deid::rules {

struct SyntaxError : Error {
    SyntaxError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct DuplicateKey : Error {
    DuplicateKey(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": duplicate key: " + what), line(line) {}
    int line;
};

struct UnknownAttributeAlias : Error {
    UnknownAttributeAlias(int line, const std::string& name)
        : Error("line " + std::to_string(line) + ": unknown attribute alias: " + name),
          line(line) {}
    int line;
};

struct MissingParam : Error {
    using Error::Error;
};

enum class FilterAction { Accept, Reject };

enum class FilterOp { Equals, Contains, MatchesRegex, IsEmpty, IsPresent, IsAbsent };

/// One line of a filter script. Matching is ASCII case-insensitive;
/// `contains` tests each backslash-separated value component.
struct FilterRule {
    FilterAction action = FilterAction::Reject;
    dicom::Tag attribute;
    std::string attribute_name;
    FilterOp op = FilterOp::Equals;
    std::string literal;
    std::string reason;
    std::shared_ptr<const std::regex> pattern;  // MatchesRegex only
};

/// Ordered rule list; evaluation is first-match-wins, so accept rules
/// listed before reject rules implement whitelist bypass.
struct FilterScript {
    std::vector<FilterRule> rules;
    FilterAction default_action = FilterAction::Accept;
};

/// Lookup key of one scrub entry. Make and model are matched
/// case-insensitively; rows/cols exactly.
struct ScrubKey {
    std::string modality;
    std::string make_lower;
    std::string model_lower;
    int rows = 0;
    int cols = 0;

    auto operator<=>(const ScrubKey&) const = default;
};

struct ScrubEntry {
    ScrubKey key;
    std::vector<dicom::Rect> rects;
    int line = 0;
};

struct ScrubScript {
    std::vector<ScrubEntry> entries;
    std::set<std::string> whitelist_only_modalities;

    const ScrubEntry* find(const ScrubKey& key) const;
};

enum class AnonAction { Keep, Remove, Empty, Replace, Param, HashUid, JitterDate };

std::string_view anon_action_name(AnonAction a);

struct AnonRule {
    AnonAction action = AnonAction::Remove;
    std::string arg;  // literal for Replace, parameter name for Param
};

/// Per-tag action table plus defaults for unlisted and private tags.
struct AnonScript {
    std::map<dicom::Tag, AnonRule> actions;
    AnonAction default_action = AnonAction::Remove;   // Remove or Keep
    AnonAction private_action = AnonAction::Remove;   // Remove or Keep
};

/// Per-request parameters referenced by anonymizer scripts.
struct ScriptParams {
    std::string accession;
    std::string mrn;
    int jitter_days = 0;
    std::string study_salt;
    std::map<std::string, std::string> extra;

    std::optional<std::string> lookup(std::string_view name) const;
};

/// The three parsed rule programs driving one pipeline run.
struct RuleSet {
    FilterScript filter;
    ScrubScript scrub;
    AnonScript anon;
};

FilterScript parse_filter_script(std::string_view text);
ScrubScript parse_scrub_script(std::string_view text);
AnonScript parse_anon_script(std::string_view text);

}  // namespace deid::rules
