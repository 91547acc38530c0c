#pragma once

#include "deid/dicom/dataset.hpp"
#include "deid/dicom/pixels.hpp"
#include "deid/rules/evaluate.hpp"
#include "deid/rules/scripts.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace deid::engine {

enum class OutcomeKind { Filtered, Anonymized, ScrubbedAndAnonymized, Error };

enum class ErrorKind { None, ParseError, UnsupportedEncoding, RuleError };

std::string_view outcome_name(OutcomeKind k);
std::string_view error_kind_name(ErrorKind k);

/// What happened to one input instance. Exactly one variant per input;
/// Error never produces an output file.
struct Outcome {
    OutcomeKind kind = OutcomeKind::Error;
    std::string detail;  // filter reason or error description
    ErrorKind error = ErrorKind::None;
    std::vector<dicom::Rect> rects;
    std::vector<rules::TransformRecord> transforms;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;
};

struct InstanceResult {
    std::optional<dicom::DataSet> output;
    Outcome outcome;
};

/// Runs the three pipeline stages on one parsed instance:
/// filter -> scrub -> anonymize. A filter reject short-circuits with no
/// output; a whitelist-only scrub miss becomes Filtered as well; stage
/// exceptions surface as Error outcomes, never as thrown exceptions.
InstanceResult deid_instance(const dicom::DataSet& ds, const rules::RuleSet& rules,
                             const rules::ScriptParams& params);

/// parse_file + deid_instance with parse failures folded into the Error
/// outcome. bytes_in/bytes_out are filled from the encoded sizes.
InstanceResult deid_bytes(std::span<const std::uint8_t> bytes, const rules::RuleSet& rules,
                          const rules::ScriptParams& params);

/// One instance to de-identify: an id plus a lazy byte loader.
struct InstanceSource {
    std::string id;
    std::function<std::vector<std::uint8_t>()> load;
};

struct StudyCounts {
    std::uint64_t filtered = 0;
    std::uint64_t anonymized = 0;
    std::uint64_t scrubbed = 0;
    std::uint64_t errors = 0;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;

    std::uint64_t total() const { return filtered + anonymized + scrubbed + errors; }
    void add(const Outcome& o);
};

struct StudyResult {
    std::vector<std::pair<std::string, InstanceResult>> instances;
    StudyCounts counts;
};

/// One outcome per input; filtered + anonymized + scrubbed + errors
/// always equals the input count.
StudyResult deid_study(const std::vector<InstanceSource>& inputs, const rules::RuleSet& rules,
                       const rules::ScriptParams& params);

}  // namespace deid::engine
