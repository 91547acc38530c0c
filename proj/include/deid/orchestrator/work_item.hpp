#pragma once

#include "deid/rules/scripts.hpp"

#include <string>
#include <vector>

namespace deid::orch {

/// References to the three rule scripts a work item runs under.
struct ScriptRefs {
    std::string filter;
    std::string scrub;
    std::string anon;

    auto operator<=>(const ScriptRefs&) const = default;
};

/// One de-identification task: everything a worker needs besides the
/// stores. Serialized as the queue message payload.
struct WorkItem {
    std::string study_id;
    std::string mode;  // "reversible" | "irreversible"
    std::string real_accession;
    std::string anon_accession;
    ScriptRefs scripts;
    rules::ScriptParams params;
    std::vector<std::string> input_keys;

    std::string to_json() const;
    static WorkItem from_json(const std::string& text);
};

}  // namespace deid::orch
