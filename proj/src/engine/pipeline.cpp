#include "deid/engine/pipeline.hpp"

#include "deid/dicom/file_format.hpp"

namespace deid::engine {

std::string_view outcome_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Filtered: return "filtered";
        case OutcomeKind::Anonymized: return "anonymized";
        case OutcomeKind::ScrubbedAndAnonymized: return "scrubbed+anonymized";
        case OutcomeKind::Error: return "error";
    }
    return "?";
}

std::string_view error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::None: return "";
        case ErrorKind::ParseError: return "parse";
        case ErrorKind::UnsupportedEncoding: return "unsupported-encoding";
        case ErrorKind::RuleError: return "rule";
    }
    return "?";
}

void StudyCounts::add(const Outcome& o) {
    switch (o.kind) {
        case OutcomeKind::Filtered: ++filtered; break;
        case OutcomeKind::Anonymized: ++anonymized; break;
        case OutcomeKind::ScrubbedAndAnonymized: ++scrubbed; break;
        case OutcomeKind::Error: ++errors; break;
    }
    bytes_in += o.bytes_in;
    bytes_out += o.bytes_out;
}

InstanceResult deid_instance(const dicom::DataSet& ds, const rules::RuleSet& rules,
                             const rules::ScriptParams& params) {
    InstanceResult result;
    Outcome& outcome = result.outcome;
    try {
        auto decision = rules::evaluate_filter(rules.filter, ds);
        if (!decision.accepted) {
            outcome.kind = OutcomeKind::Filtered;
            outcome.detail = decision.reason;
            return result;
        }

        // Scrub before anonymize: the lookup keys on manufacturer metadata
        // the anonymizer may drop.
        auto lookup = rules::lookup_scrub(rules.scrub, ds);
        if (lookup.kind == rules::ScrubLookup::Kind::WhitelistReject) {
            outcome.kind = OutcomeKind::Filtered;
            outcome.detail = "no scrub whitelist rule";
            return result;
        }

        dicom::DataSet working = ds;
        bool scrubbed = false;
        if (lookup.kind == rules::ScrubLookup::Kind::Rects) {
            auto px = dicom::decode_pixels(working);
            for (const auto& rect : lookup.rects) {
                // A catalog/resolution mismatch fails closed rather than
                // shipping a partially scrubbed instance.
                px = dicom::blank_region(std::move(px), rect);
            }
            working = dicom::with_pixels(std::move(working), px);
            outcome.rects = lookup.rects;
            scrubbed = true;
        }

        auto [anonymized, transforms] = rules::apply_anon(rules.anon, working, params);
        outcome.transforms = std::move(transforms);
        outcome.kind = scrubbed ? OutcomeKind::ScrubbedAndAnonymized : OutcomeKind::Anonymized;
        result.output = std::move(anonymized);
        return result;
    } catch (const dicom::UnsupportedTransferSyntax& e) {
        outcome = Outcome{OutcomeKind::Error, e.what(), ErrorKind::UnsupportedEncoding, {}, {}, outcome.bytes_in, 0};
    } catch (const dicom::UnsupportedEncoding& e) {
        outcome = Outcome{OutcomeKind::Error, e.what(), ErrorKind::UnsupportedEncoding, {}, {}, outcome.bytes_in, 0};
    } catch (const dicom::MalformedFile& e) {
        outcome = Outcome{OutcomeKind::Error, e.what(), ErrorKind::ParseError, {}, {}, outcome.bytes_in, 0};
    } catch (const dicom::MissingPixelData& e) {
        outcome = Outcome{OutcomeKind::Error, e.what(), ErrorKind::ParseError, {}, {}, outcome.bytes_in, 0};
    } catch (const dicom::InconsistentDimensions& e) {
        outcome = Outcome{OutcomeKind::Error, e.what(), ErrorKind::ParseError, {}, {}, outcome.bytes_in, 0};
    } catch (const std::exception& e) {
        outcome = Outcome{OutcomeKind::Error, e.what(), ErrorKind::RuleError, {}, {}, outcome.bytes_in, 0};
    }
    result.output.reset();
    return result;
}

InstanceResult deid_bytes(std::span<const std::uint8_t> bytes, const rules::RuleSet& rules,
                          const rules::ScriptParams& params) {
    InstanceResult result;
    result.outcome.bytes_in = bytes.size();
    dicom::DataSet ds;
    try {
        ds = dicom::parse_file(bytes);
    } catch (const dicom::UnsupportedTransferSyntax& e) {
        result.outcome = Outcome{OutcomeKind::Error, e.what(), ErrorKind::UnsupportedEncoding,
                                 {}, {}, bytes.size(), 0};
        return result;
    } catch (const std::exception& e) {
        result.outcome =
            Outcome{OutcomeKind::Error, e.what(), ErrorKind::ParseError, {}, {}, bytes.size(), 0};
        return result;
    }
    result = deid_instance(ds, rules, params);
    result.outcome.bytes_in = bytes.size();
    if (result.output) {
        result.outcome.bytes_out = dicom::write_file(*result.output).size();
    }
    return result;
}

StudyResult deid_study(const std::vector<InstanceSource>& inputs, const rules::RuleSet& rules,
                       const rules::ScriptParams& params) {
    StudyResult out;
    out.instances.reserve(inputs.size());
    for (const auto& source : inputs) {
        InstanceResult r;
        try {
            auto bytes = source.load();
            r = deid_bytes(bytes, rules, params);
        } catch (const std::exception& e) {
            r.outcome =
                Outcome{OutcomeKind::Error, e.what(), ErrorKind::ParseError, {}, {}, 0, 0};
        }
        out.counts.add(r.outcome);
        out.instances.emplace_back(source.id, std::move(r));
    }
    return out;
}

}  // namespace deid::engine
