#include "deid/orchestrator/work_item.hpp"

#include <json.hpp>

namespace deid::orch {

using nlohmann::json;

std::string WorkItem::to_json() const {
    json j{{"study", study_id},
           {"mode", mode},
           {"real_accession", real_accession},
           {"anon_accession", anon_accession},
           {"scripts", {{"filter", scripts.filter}, {"scrub", scripts.scrub}, {"anon", scripts.anon}}},
           {"params",
            {{"accession", params.accession},
             {"mrn", params.mrn},
             {"jitter", params.jitter_days},
             {"salt", params.study_salt},
             {"extra", params.extra}}},
           {"inputs", input_keys}};
    return j.dump();
}

WorkItem WorkItem::from_json(const std::string& text) {
    json j = json::parse(text);
    WorkItem w;
    w.study_id = j.at("study").get<std::string>();
    w.mode = j.value("mode", "irreversible");
    w.real_accession = j.value("real_accession", "");
    w.anon_accession = j.at("anon_accession").get<std::string>();
    w.scripts.filter = j.at("scripts").at("filter").get<std::string>();
    w.scripts.scrub = j.at("scripts").at("scrub").get<std::string>();
    w.scripts.anon = j.at("scripts").at("anon").get<std::string>();
    const auto& p = j.at("params");
    w.params.accession = p.value("accession", "");
    w.params.mrn = p.value("mrn", "");
    w.params.jitter_days = p.value("jitter", 0);
    w.params.study_salt = p.value("salt", "");
    if (p.contains("extra")) {
        w.params.extra = p.at("extra").get<std::map<std::string, std::string>>();
    }
    w.input_keys = j.value("inputs", std::vector<std::string>{});
    return w;
}

}  // namespace deid::orch
