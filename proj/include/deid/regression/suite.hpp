#pragma once

#include "deid/dicom/pixels.hpp"
#include "deid/error.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace deid::regression {

struct MissingBackground : Error {
    using Error::Error;
};

struct FixtureMissing : Error {
    using Error::Error;
};

struct Assertion {
    enum class Kind { MustAnonymize, MustScrubAt, MustFilter, MustJitterBy };
    Kind kind = Kind::MustAnonymize;
    dicom::Rect rect{};  // MustScrubAt
    int days = 0;        // MustJitterBy
};

struct Scenario {
    std::string name;
    std::string fixture_dir;
    std::vector<Assertion> assertions;
    int line = 0;
};

/// One parsed suite file: the Background's script paths and parameters
/// plus the scenarios. Script and fixture paths resolve relative to the
/// suite file's directory.
struct ScenarioSuite {
    std::string feature;
    std::string anon_script;
    std::string scrub_script;
    std::string filter_script;
    std::map<std::string, std::string> parameters;
    std::vector<Scenario> scenarios;
};

/// Parses the closed step grammar. Unknown steps raise SyntaxError with
/// the line number; scenarios with a missing Background raise
/// MissingBackground.
ScenarioSuite parse_suite(std::string_view text);

struct ScenarioResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> failures;
};

struct SuiteReport {
    bool passed = true;
    std::vector<ScenarioResult> scenarios;

    std::string summary() const;
};

/// Runs every fixture file of every scenario through the pipeline with
/// the Background's rules and parameters. The suite passes only when
/// every assertion of every scenario holds. Deterministic and
/// independent of directory enumeration order.
SuiteReport run_suite(const ScenarioSuite& suite, const std::filesystem::path& base_dir);

}  // namespace deid::regression
