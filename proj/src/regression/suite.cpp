#include "deid/regression/suite.hpp"

#include "deid/dicom/file_format.hpp"
#include "deid/engine/pipeline.hpp"
#include "deid/rules/evaluate.hpp"
#include "deid/rules/scripts.hpp"
#include "deid/util/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace deid::regression {

namespace fs = std::filesystem;

namespace {

// Extracts the single double-quoted token of a step.
std::string quoted(std::string_view line, int lineno) {
    auto open = line.find('"');
    auto close = line.rfind('"');
    if (open == std::string_view::npos || close == open) {
        throw rules::SyntaxError(lineno, "expected a quoted argument");
    }
    return std::string(line.substr(open + 1, close - open - 1));
}

bool take_prefix(std::string_view& line, std::string_view prefix) {
    if (util::starts_with(line, prefix)) {
        line.remove_prefix(prefix.size());
        return true;
    }
    return false;
}

int parse_int(std::string_view s, int lineno) {
    int v = 0;
    auto t = util::trim(s);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw rules::SyntaxError(lineno, "expected integer, got '" + std::string(t) + "'");
    }
    return v;
}

dicom::Rect parse_rect_csv(std::string_view csv, int lineno) {
    auto parts = util::split(csv, ',');
    if (parts.size() != 4) throw rules::SyntaxError(lineno, "expected x,y,w,h");
    return {parse_int(parts[0], lineno), parse_int(parts[1], lineno), parse_int(parts[2], lineno),
            parse_int(parts[3], lineno)};
}

}  // namespace

ScenarioSuite parse_suite(std::string_view text) {
    ScenarioSuite suite;
    enum class Section { None, Background, Scenario };
    Section section = Section::None;
    Assertion::Kind last_then = Assertion::Kind::MustAnonymize;
    bool have_when = false;

    int lineno = 0;
    for (const auto& raw : util::split(text, '\n')) {
        ++lineno;
        std::string_view line = util::trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (take_prefix(line, "Feature:")) {
            suite.feature = std::string(util::trim(line));
            continue;
        }
        if (line == "Background:") {
            section = Section::Background;
            continue;
        }
        if (take_prefix(line, "Scenario:")) {
            if (!suite.scenarios.empty() && suite.scenarios.back().assertions.empty()) {
                throw rules::SyntaxError(suite.scenarios.back().line,
                                         "scenario has no assertions");
            }
            Scenario s;
            s.name = std::string(util::trim(line));
            s.line = lineno;
            suite.scenarios.push_back(std::move(s));
            section = Section::Scenario;
            have_when = false;
            continue;
        }

        if (section == Section::Background) {
            std::string_view rest = line;
            if (take_prefix(rest, "Given the pipeline uses the anonymizer script,")) {
                suite.anon_script = quoted(rest, lineno);
                continue;
            }
            rest = line;
            if (take_prefix(rest, "Given the pipeline uses the pixel script,")) {
                suite.scrub_script = quoted(rest, lineno);
                continue;
            }
            rest = line;
            if (take_prefix(rest, "Given the pipeline uses the filter script,")) {
                suite.filter_script = quoted(rest, lineno);
                continue;
            }
            rest = line;
            if (take_prefix(rest, "And script parameter") ||
                take_prefix(rest, "Given script parameter")) {
                // And script parameter "<key>" is "<value>"
                auto q1 = rest.find('"');
                auto q2 = rest.find('"', q1 + 1);
                auto q3 = rest.find('"', q2 + 1);
                auto q4 = rest.find('"', q3 + 1);
                if (q1 == std::string_view::npos || q2 == std::string_view::npos ||
                    q3 == std::string_view::npos || q4 == std::string_view::npos ||
                    util::trim(rest.substr(q2 + 1, q3 - q2 - 1)) != "is") {
                    throw rules::SyntaxError(lineno,
                                             "expected: script parameter \"<key>\" is \"<value>\"");
                }
                suite.parameters[std::string(rest.substr(q1 + 1, q2 - q1 - 1))] =
                    std::string(rest.substr(q3 + 1, q4 - q3 - 1));
                continue;
            }
            throw rules::SyntaxError(lineno, "unknown background step: " + std::string(line));
        }

        if (section == Section::Scenario) {
            Scenario& scenario = suite.scenarios.back();
            std::string_view rest = line;
            if (take_prefix(rest, "Given the DICOM directory")) {
                scenario.fixture_dir = quoted(rest, lineno);
                continue;
            }
            if (line == "When ran through the deid pipeline") {
                have_when = true;
                continue;
            }
            if (line == "Then the images SHOULD be anonymized") {
                if (!have_when) throw rules::SyntaxError(lineno, "Then before When");
                scenario.assertions.push_back({Assertion::Kind::MustAnonymize, {}, 0});
                last_then = Assertion::Kind::MustAnonymize;
                continue;
            }
            if (line == "Then the images SHOULD NOT pass the filter") {
                if (!have_when) throw rules::SyntaxError(lineno, "Then before When");
                scenario.assertions.push_back({Assertion::Kind::MustFilter, {}, 0});
                last_then = Assertion::Kind::MustFilter;
                continue;
            }
            rest = line;
            if (take_prefix(rest, "Then the resulting images should be scrubbed at") ||
                take_prefix(rest, "And the resulting images should be scrubbed at")) {
                if (!have_when) throw rules::SyntaxError(lineno, "Then before When");
                scenario.assertions.push_back(
                    {Assertion::Kind::MustScrubAt, parse_rect_csv(util::trim(rest), lineno), 0});
                last_then = Assertion::Kind::MustScrubAt;
                continue;
            }
            rest = line;
            if (take_prefix(rest, "And the dates should be jittered by") ||
                take_prefix(rest, "Then the dates should be jittered by")) {
                if (!have_when) throw rules::SyntaxError(lineno, "Then before When");
                auto tail = util::trim(rest);
                if (!tail.ends_with("days") && !tail.ends_with("day")) {
                    throw rules::SyntaxError(lineno, "expected: jittered by <n> days");
                }
                tail = util::trim(tail.substr(0, tail.rfind("day")));
                scenario.assertions.push_back(
                    {Assertion::Kind::MustJitterBy, {}, parse_int(tail, lineno)});
                last_then = Assertion::Kind::MustJitterBy;
                continue;
            }
            (void)last_then;
            throw rules::SyntaxError(lineno, "unknown scenario step: " + std::string(line));
        }

        throw rules::SyntaxError(lineno, "step outside Background or Scenario: " + std::string(line));
    }

    if (!suite.scenarios.empty()) {
        if (suite.scenarios.back().assertions.empty()) {
            throw rules::SyntaxError(suite.scenarios.back().line, "scenario has no assertions");
        }
        if (suite.anon_script.empty() || suite.scrub_script.empty() ||
            suite.filter_script.empty()) {
            throw MissingBackground("background must declare filter, pixel and anonymizer scripts");
        }
    }
    return suite;
}

namespace {

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path resolve(const fs::path& base, const std::string& path) {
    fs::path p(path);
    return p.is_absolute() ? p : base / p;
}

constexpr dicom::Tag kDateTags[] = {dicom::tags::kStudyDate, dicom::tags::kSeriesDate,
                                    dicom::tags::kAcquisitionDate, dicom::tags::kContentDate};

// Every date present in the input must appear in the output shifted by
// exactly `days`.
void check_dates(const dicom::DataSet& input, const dicom::DataSet& output, int days,
                 const std::string& file, std::vector<std::string>& failures) {
    for (dicom::Tag tag : kDateTags) {
        auto in_value = input.string_value(tag);
        if (!in_value) continue;
        auto expected = rules::shift_date(*in_value, days);
        if (!expected) continue;  // unparseable source dates are removed by the anonymizer
        auto out_value = output.string_value(tag);
        if (!out_value) {
            failures.push_back(file + ": " + std::string(dicom::tag_name(tag)) +
                               " missing from output");
        } else if (*out_value != *expected) {
            failures.push_back(file + ": " + std::string(dicom::tag_name(tag)) + " is " +
                               *out_value + ", expected " + *expected);
        }
    }
}

}  // namespace

std::string SuiteReport::summary() const {
    std::string out;
    for (const auto& s : scenarios) {
        out += (s.passed ? "PASS  " : "FAIL  ");
        out += s.name;
        out += "\n";
        for (const auto& f : s.failures) {
            out += "      " + f + "\n";
        }
    }
    out += passed ? "suite: PASS\n" : "suite: FAIL\n";
    return out;
}

SuiteReport run_suite(const ScenarioSuite& suite, const fs::path& base_dir) {
    rules::RuleSet ruleset;
    ruleset.filter = rules::parse_filter_script(read_text(resolve(base_dir, suite.filter_script)));
    ruleset.scrub = rules::parse_scrub_script(read_text(resolve(base_dir, suite.scrub_script)));
    ruleset.anon = rules::parse_anon_script(read_text(resolve(base_dir, suite.anon_script)));

    rules::ScriptParams params;
    for (const auto& [key, value] : suite.parameters) {
        if (key == "accession") params.accession = value;
        else if (key == "mrn") params.mrn = value;
        else if (key == "jitter") params.jitter_days = parse_int(value, 0);
        else if (key == "salt") params.study_salt = value;
        else params.extra[key] = value;
    }
    if (params.study_salt.empty()) params.study_salt = "regression";

    SuiteReport report;
    for (const Scenario& scenario : suite.scenarios) {
        ScenarioResult result;
        result.name = scenario.name;

        fs::path dir = resolve(base_dir, scenario.fixture_dir);
        if (!fs::is_directory(dir)) {
            throw FixtureMissing("fixture directory missing: " + dir.string());
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        if (files.empty()) {
            throw FixtureMissing("fixture directory empty: " + dir.string());
        }
        std::sort(files.begin(), files.end());

        for (const auto& file : files) {
            std::string name = file.filename().string();
            auto bytes = read_bytes(file);

            std::optional<dicom::DataSet> input;
            engine::InstanceResult r;
            try {
                input = dicom::parse_file(bytes);
                r = engine::deid_instance(*input, ruleset, params);
            } catch (const std::exception& e) {
                r.outcome =
                    engine::Outcome{engine::OutcomeKind::Error, e.what(),
                                    engine::ErrorKind::ParseError, {}, {}, bytes.size(), 0};
            }

            for (const Assertion& a : scenario.assertions) {
                switch (a.kind) {
                    case Assertion::Kind::MustFilter:
                        if (r.outcome.kind != engine::OutcomeKind::Filtered) {
                            result.failures.push_back(
                                name + ": expected filtered, got " +
                                std::string(engine::outcome_name(r.outcome.kind)));
                        }
                        break;
                    case Assertion::Kind::MustAnonymize: {
                        if (r.outcome.kind != engine::OutcomeKind::Anonymized &&
                            r.outcome.kind != engine::OutcomeKind::ScrubbedAndAnonymized) {
                            result.failures.push_back(
                                name + ": expected anonymized, got " +
                                std::string(engine::outcome_name(r.outcome.kind)) +
                                (r.outcome.detail.empty() ? "" : " (" + r.outcome.detail + ")"));
                            break;
                        }
                        auto acc = r.output->string_value(dicom::tags::kAccessionNumber);
                        if (!acc || *acc != params.accession) {
                            result.failures.push_back(name + ": AccessionNumber is '" +
                                                      acc.value_or("<absent>") + "', expected '" +
                                                      params.accession + "'");
                        }
                        auto mrn = r.output->string_value(dicom::tags::kPatientId);
                        if (!mrn || *mrn != params.mrn) {
                            result.failures.push_back(name + ": PatientID is '" +
                                                      mrn.value_or("<absent>") + "', expected '" +
                                                      params.mrn + "'");
                        }
                        check_dates(*input, *r.output, params.jitter_days, name, result.failures);
                        break;
                    }
                    case Assertion::Kind::MustScrubAt: {
                        if (!r.output) {
                            result.failures.push_back(
                                name + ": no output to inspect (outcome " +
                                std::string(engine::outcome_name(r.outcome.kind)) + ")");
                            break;
                        }
                        try {
                            auto px = dicom::decode_pixels(*r.output);
                            std::size_t bpp = px.bytes_per_pixel();
                            bool clean = true;
                            for (const auto& frame : px.frames) {
                                for (int row = a.rect.y; row < a.rect.y + a.rect.h && clean; ++row) {
                                    const std::uint8_t* p =
                                        frame.data() +
                                        (static_cast<std::size_t>(row) * px.cols + a.rect.x) * bpp;
                                    for (std::size_t i = 0; i < static_cast<std::size_t>(a.rect.w) * bpp; ++i) {
                                        if (p[i] != 0) {
                                            clean = false;
                                            break;
                                        }
                                    }
                                }
                            }
                            if (!clean) {
                                result.failures.push_back(name + ": nonzero pixels inside " +
                                                          a.rect.str());
                            }
                        } catch (const std::exception& e) {
                            result.failures.push_back(name + ": cannot decode output pixels: " +
                                                      e.what());
                        }
                        break;
                    }
                    case Assertion::Kind::MustJitterBy: {
                        if (!r.output) {
                            result.failures.push_back(
                                name + ": no output to inspect (outcome " +
                                std::string(engine::outcome_name(r.outcome.kind)) + ")");
                            break;
                        }
                        check_dates(*input, *r.output, a.days, name, result.failures);
                        break;
                    }
                }
            }
        }

        result.passed = result.failures.empty();
        report.passed = report.passed && result.passed;
        report.scenarios.push_back(std::move(result));
    }
    return report;
}

}  // namespace deid::regression
