#include "deid/rules/evaluate.hpp"

#include "deid/dicom/dictionary.hpp"
#include "deid/util/digest.hpp"
#include "deid/util/text.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace deid::rules {

namespace {

bool rule_matches(const FilterRule& rule, const dicom::DataSet& ds) {
    const dicom::Element* e = ds.find(rule.attribute);
    switch (rule.op) {
        case FilterOp::IsAbsent:
            return e == nullptr;
        case FilterOp::IsPresent:
            return e != nullptr;
        case FilterOp::IsEmpty:
            return e != nullptr && e->as_string().empty();
        case FilterOp::Equals:
            return e != nullptr &&
                   util::iequals(util::trim(e->as_string()), rule.literal);
        case FilterOp::Contains: {
            if (!e) return false;
            for (const auto& part : e->components()) {
                if (util::iequals(part, rule.literal)) return true;
            }
            return false;
        }
        case FilterOp::MatchesRegex: {
            if (!e) return false;
            std::string v = e->as_string();
            return std::regex_search(v, *rule.pattern);
        }
    }
    return false;
}

}  // namespace

FilterDecision evaluate_filter(const FilterScript& fs, const dicom::DataSet& ds) {
    for (const FilterRule& rule : fs.rules) {
        if (rule_matches(rule, ds)) {
            if (rule.action == FilterAction::Accept) return {true, {}};
            return {false, rule.reason};
        }
    }
    if (fs.default_action == FilterAction::Accept) return {true, {}};
    return {false, "default reject"};
}

ScrubLookup lookup_scrub(const ScrubScript& ss, const dicom::DataSet& ds) {
    auto modality = ds.string_value(dicom::tags::kModality);

    auto make = ds.string_value(dicom::tags::kManufacturer);
    auto model = ds.string_value(dicom::tags::kManufacturerModelName);
    auto rows = ds.int_value(dicom::tags::kRows);
    auto cols = ds.int_value(dicom::tags::kColumns);

    // Missing attributes match no entry, but a whitelist-only modality
    // still rejects such an instance.
    if (modality && make && model && rows && cols) {
        ScrubKey key;
        key.modality = std::string(util::trim(*modality));
        key.make_lower = util::to_lower(util::trim(*make));
        key.model_lower = util::to_lower(util::trim(*model));
        key.rows = static_cast<int>(*rows);
        key.cols = static_cast<int>(*cols);
        if (const ScrubEntry* entry = ss.find(key)) {
            return {ScrubLookup::Kind::Rects, entry->rects};
        }
    }
    if (modality && ss.whitelist_only_modalities.count(std::string(util::trim(*modality)))) {
        return {ScrubLookup::Kind::WhitelistReject, {}};
    }
    return {ScrubLookup::Kind::NoRule, {}};
}

std::string hash_uid(std::string_view salt, std::string_view uid) {
    std::string input;
    input.reserve(salt.size() + uid.size() + 1);
    input.append(salt);
    input.push_back('\x1f');
    input.append(util::trim(uid));
    auto digest = util::sha256(input);
    std::string out = "2.25." + util::digest_u128_decimal(digest);
    // "2.25." plus at most 39 decimal digits always fits the 64-char UID limit.
    return out;
}

std::optional<std::string> shift_date(std::string_view da, int days) {
    auto s = util::trim(da);
    if (s.size() != 8) return std::nullopt;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
    }
    int y = 0, m = 0, d = 0;
    std::from_chars(s.data(), s.data() + 4, y);
    std::from_chars(s.data() + 4, s.data() + 6, m);
    std::from_chars(s.data() + 6, s.data() + 8, d);

    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    std::chrono::sys_days shifted = std::chrono::sys_days(ymd) + std::chrono::days(days);
    std::chrono::year_month_day out{shifted};

    char buf[9];
    std::snprintf(buf, sizeof(buf), "%04d%02u%02u", static_cast<int>(out.year()),
                  static_cast<unsigned>(out.month()), static_cast<unsigned>(out.day()));
    return std::string(buf);
}

std::optional<std::string> shift_datetime(std::string_view dt, int days) {
    auto s = util::trim(dt);
    if (s.size() < 8) return std::nullopt;
    auto shifted = shift_date(s.substr(0, 8), days);
    if (!shifted) return std::nullopt;
    return *shifted + std::string(s.substr(8));
}

std::pair<dicom::DataSet, std::vector<TransformRecord>> apply_anon(const AnonScript& as,
                                                                   const dicom::DataSet& ds,
                                                                   const ScriptParams& p) {
    dicom::DataSet out;
    out.set_transfer_syntax(ds.transfer_syntax());
    std::vector<TransformRecord> records;

    auto resolve = [&](dicom::Tag tag) -> AnonRule {
        auto it = as.actions.find(tag);
        if (it != as.actions.end()) return it->second;
        if (tag.is_private()) return AnonRule{as.private_action, {}};
        return AnonRule{as.default_action, {}};
    };

    for (const dicom::Element& e : ds.elements()) {
        AnonRule rule = resolve(e.tag);
        bool had_value = !e.value.empty();
        switch (rule.action) {
            case AnonAction::Keep:
                out.set(e);
                break;
            case AnonAction::Remove:
                records.push_back({e.tag, "remove", had_value});
                break;
            case AnonAction::Empty:
                out.set(dicom::Element{e.tag, e.vr, {}});
                records.push_back({e.tag, "empty", had_value});
                break;
            case AnonAction::Replace:
                out.set(dicom::Element::of_string(e.tag, e.vr, rule.arg));
                records.push_back({e.tag, "replace", had_value});
                break;
            case AnonAction::Param: {
                auto value = p.lookup(rule.arg);
                if (!value) throw MissingParam("script parameter '" + rule.arg + "' not provided");
                out.set(dicom::Element::of_string(e.tag, e.vr, *value));
                records.push_back({e.tag, "param(" + rule.arg + ")", had_value});
                break;
            }
            case AnonAction::HashUid: {
                out.set(dicom::Element::of_string(e.tag, e.vr, hash_uid(p.study_salt, e.as_string())));
                records.push_back({e.tag, "hashuid", had_value});
                break;
            }
            case AnonAction::JitterDate: {
                std::optional<std::string> shifted;
                if (e.vr == dicom::vr::DT) shifted = shift_datetime(e.as_string(), p.jitter_days);
                else shifted = shift_date(e.as_string(), p.jitter_days);
                if (!shifted) {
                    records.push_back({e.tag, "remove/invalid-date", had_value});
                } else {
                    out.set(dicom::Element::of_string(e.tag, e.vr, *shifted));
                    records.push_back({e.tag, "jitterdate", had_value});
                }
                break;
            }
        }
    }

    // Pseudonym ids are stamped even when the source omitted the tag, so
    // every output carries the study's anonymized identifiers.
    for (const auto& [tag, rule] : as.actions) {
        if (ds.contains(tag)) continue;
        if (rule.action == AnonAction::Param) {
            auto value = p.lookup(rule.arg);
            if (!value) throw MissingParam("script parameter '" + rule.arg + "' not provided");
            out.set(dicom::Element::of_string(tag, dicom::vr_for_tag(tag), *value));
            records.push_back({tag, "param(" + rule.arg + ")", false});
        } else if (rule.action == AnonAction::Replace) {
            out.set(dicom::Element::of_string(tag, dicom::vr_for_tag(tag), rule.arg));
            records.push_back({tag, "replace", false});
        }
    }

    return {std::move(out), std::move(records)};
}

}  // namespace deid::rules
