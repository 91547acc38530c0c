#include "deid/pseudonym/store.hpp"

#include "deid/util/digest.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace deid::pseudonym {

using nlohmann::json;

namespace {

constexpr std::string_view kHeader = R"({"format":"deid-mapping-store","version":1})";

std::string nine_digits(std::uint64_t v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%09llu",
                  static_cast<unsigned long long>(v % 1000000000ULL));
    return buf;
}

std::string derive_code(std::uint64_t seed, std::string_view label, std::string_view real_id,
                        int bump) {
    std::string input = std::to_string(seed);
    input.push_back('\x1f');
    input.append(label);
    input.push_back('\x1f');
    input.append(real_id);
    if (bump > 0) {
        input.push_back('\x1f');
        input.append(std::to_string(bump));
    }
    return nine_digits(util::digest_u64(util::sha256(input)));
}

/// Uniform over [-31,31] excluding 0, keyed on (study seed, patient).
int derive_jitter(std::uint64_t seed, std::string_view real_mrn) {
    std::string input = std::to_string(seed);
    input.append("\x1f""JIT\x1f");
    input.append(real_mrn);
    std::uint64_t v = util::digest_u64(util::sha256(input)) % 62;
    return v < 31 ? static_cast<int>(v) - 31 : static_cast<int>(v) - 30;
}

}  // namespace

std::string_view study_mode_name(StudyMode m) {
    return m == StudyMode::Reversible ? "reversible" : "irreversible";
}

std::optional<StudyMode> study_mode_from(std::string_view name) {
    if (name == "reversible") return StudyMode::Reversible;
    if (name == "irreversible") return StudyMode::Irreversible;
    return std::nullopt;
}

MappingStore::MappingStore(std::filesystem::path store_file, std::filesystem::path exclusion_file)
    : store_file_(std::move(store_file)) {
    if (!exclusion_file.empty() && std::filesystem::exists(exclusion_file)) {
        std::ifstream in(exclusion_file);
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (!line.empty() && line[0] != '#') excluded_.insert(line);
        }
    }
    std::scoped_lock lock(mu_);
    load_locked();
}

void MappingStore::load_locked() {
    if (store_file_.empty() || !std::filesystem::exists(store_file_)) return;
    std::ifstream in(store_file_);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;  // header
        }
        json rec = json::parse(line);
        std::string type = rec.value("t", "");
        if (type == "study") {
            StudyState st;
            st.reg.study_id = rec.at("id").get<std::string>();
            st.reg.mode = study_mode_from(rec.value("mode", "irreversible"))
                              .value_or(StudyMode::Irreversible);
            st.reg.seed = rec.value("seed", std::uint64_t{0});
            st.reg.delivery_window_seconds = rec.value("window", 3600);
            for (const auto& a : rec.value("accessions", json::array())) {
                st.reg.approved_accessions.insert(a.get<std::string>());
            }
            st.purged = rec.value("purged", false);
            studies_[st.reg.study_id] = std::move(st);
        } else if (type == "mapping") {
            Mapping m;
            m.study_id = rec.at("study").get<std::string>();
            m.anon_accession = rec.at("anon_accession").get<std::string>();
            m.anon_mrn = rec.at("anon_mrn").get<std::string>();
            m.jitter_days = rec.at("jitter").get<int>();
            m.purged = rec.value("purged", false);
            m.real_accession = rec.value("real_accession", "");
            m.real_mrn = rec.value("real_mrn", "");
            auto it = studies_.find(m.study_id);
            if (it == studies_.end()) continue;
            StudyState& st = it->second;
            st.anon_accessions.insert(m.anon_accession);
            if (m.purged) {
                st.purged_mappings.push_back(std::move(m));
            } else {
                st.anon_to_real[m.anon_accession] = m.real_accession;
                st.mrn_codes[m.real_mrn] = {m.anon_mrn, m.jitter_days};
                st.by_real[m.real_accession] = std::move(m);
            }
        }
    }
}

void MappingStore::append_record_locked(const std::string& line) {
    if (store_file_.empty()) return;
    bool fresh = !std::filesystem::exists(store_file_);
    std::ofstream out(store_file_, std::ios::app);
    if (fresh) out << kHeader << "\n";
    out << line << "\n";
    out.flush();
    if (!out) throw Error("mapping store write failed: " + store_file_.string());
}

void MappingStore::rewrite_log_locked() {
    if (store_file_.empty()) return;
    auto tmp = store_file_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << kHeader << "\n";
        for (const auto& [id, st] : studies_) {
            json rec{{"t", "study"},
                     {"id", st.reg.study_id},
                     {"mode", std::string(study_mode_name(st.reg.mode))},
                     {"seed", st.reg.seed},
                     {"window", st.reg.delivery_window_seconds},
                     {"accessions", st.reg.approved_accessions},
                     {"purged", st.purged}};
            out << rec.dump() << "\n";
            auto dump_mapping = [&out](const Mapping& m) {
                json rec{{"t", "mapping"},          {"study", m.study_id},
                         {"anon_accession", m.anon_accession}, {"anon_mrn", m.anon_mrn},
                         {"jitter", m.jitter_days}, {"purged", m.purged}};
                if (!m.purged) {
                    rec["real_accession"] = m.real_accession;
                    rec["real_mrn"] = m.real_mrn;
                }
                out << rec.dump() << "\n";
            };
            for (const auto& m : st.purged_mappings) dump_mapping(m);
            for (const auto& [real, m] : st.by_real) dump_mapping(m);
        }
        out.flush();
        if (!out) throw Error("mapping store rewrite failed");
    }
    std::filesystem::rename(tmp, store_file_);
}

void MappingStore::register_study(const StudyRegistration& reg) {
    std::scoped_lock lock(mu_);
    if (studies_.count(reg.study_id)) {
        throw DuplicateStudy("study already registered: " + reg.study_id);
    }
    StudyState st;
    st.reg = reg;
    studies_[reg.study_id] = std::move(st);
    json rec{{"t", "study"},
             {"id", reg.study_id},
             {"mode", std::string(study_mode_name(reg.mode))},
             {"seed", reg.seed},
             {"window", reg.delivery_window_seconds},
             {"accessions", reg.approved_accessions},
             {"purged", false}};
    append_record_locked(rec.dump());
}

bool MappingStore::has_study(const std::string& study_id) const {
    std::scoped_lock lock(mu_);
    return studies_.count(study_id) != 0;
}

StudyRegistration MappingStore::study(const std::string& study_id) const {
    std::scoped_lock lock(mu_);
    auto it = studies_.find(study_id);
    if (it == studies_.end()) throw UnknownStudy("unknown study: " + study_id);
    return it->second.reg;
}

Eligibility MappingStore::validate_accession(const std::string& study_id,
                                             const std::string& accession) const {
    std::scoped_lock lock(mu_);
    auto it = studies_.find(study_id);
    if (it == studies_.end()) throw UnknownStudy("unknown study: " + study_id);
    if (!it->second.reg.approved_accessions.count(accession)) {
        return {false, "not approved"};
    }
    if (excluded_.count(accession)) {
        return {false, "excluded"};
    }
    return {true, {}};
}

Mapping MappingStore::derive_mapping_locked(const StudyState& st, const std::string& real_accession,
                                            const std::string& real_mrn) const {
    Mapping m;
    m.study_id = st.reg.study_id;
    m.real_accession = real_accession;
    m.real_mrn = real_mrn;

    for (int bump = 0;; ++bump) {
        std::string code = "ACN" + derive_code(st.reg.seed, "ACC", real_accession, bump);
        auto owner = st.anon_to_real.find(code);
        bool taken_by_other =
            (owner != st.anon_to_real.end() && owner->second != real_accession);
        if (!taken_by_other) {
            m.anon_accession = std::move(code);
            break;
        }
    }

    auto mrn_it = st.mrn_codes.find(real_mrn);
    if (mrn_it != st.mrn_codes.end()) {
        m.anon_mrn = mrn_it->second.first;
        m.jitter_days = mrn_it->second.second;
    } else {
        std::set<std::string> used;
        for (const auto& [real, code] : st.mrn_codes) used.insert(code.first);
        for (int bump = 0;; ++bump) {
            std::string code = "MRN" + derive_code(st.reg.seed, "MRN", real_mrn, bump);
            if (!used.count(code)) {
                m.anon_mrn = std::move(code);
                break;
            }
        }
        m.jitter_days = derive_jitter(st.reg.seed, real_mrn);
    }
    return m;
}

Mapping MappingStore::get_or_create_mapping(const std::string& study_id,
                                            const std::string& real_accession,
                                            const std::string& real_mrn) {
    std::scoped_lock lock(mu_);
    auto it = studies_.find(study_id);
    if (it == studies_.end()) throw UnknownStudy("unknown study: " + study_id);
    StudyState& st = it->second;

    auto eligibility = validate_accession(study_id, real_accession);
    if (!eligibility.eligible) {
        throw IneligibleAccession("accession " + real_accession + ": " + eligibility.reason);
    }

    auto existing = st.by_real.find(real_accession);
    if (existing != st.by_real.end()) return existing->second;

    Mapping m = derive_mapping_locked(st, real_accession, real_mrn);
    st.by_real[real_accession] = m;
    st.anon_to_real[m.anon_accession] = real_accession;
    st.anon_accessions.insert(m.anon_accession);
    st.mrn_codes[real_mrn] = {m.anon_mrn, m.jitter_days};

    json rec{{"t", "mapping"},
             {"study", m.study_id},
             {"real_accession", m.real_accession},
             {"anon_accession", m.anon_accession},
             {"real_mrn", m.real_mrn},
             {"anon_mrn", m.anon_mrn},
             {"jitter", m.jitter_days},
             {"purged", false}};
    append_record_locked(rec.dump());
    return m;
}

MappingStore::RealIds MappingStore::resolve(const std::string& study_id,
                                            const std::string& anon_accession) const {
    std::scoped_lock lock(mu_);
    auto it = studies_.find(study_id);
    if (it == studies_.end()) throw UnknownStudy("unknown study: " + study_id);
    const StudyState& st = it->second;
    if (st.reg.mode != StudyMode::Reversible) {
        throw IrreversibleStudy("study " + study_id + " is irreversible; links cannot be resolved");
    }
    auto found = st.anon_to_real.find(anon_accession);
    if (found == st.anon_to_real.end()) {
        throw UnknownAnonId("no mapping for anonymized accession " + anon_accession);
    }
    const Mapping& m = st.by_real.at(found->second);
    return {m.real_accession, m.real_mrn};
}

std::size_t MappingStore::purge_links(const std::string& study_id) {
    std::scoped_lock lock(mu_);
    auto it = studies_.find(study_id);
    if (it == studies_.end()) throw UnknownStudy("unknown study: " + study_id);
    StudyState& st = it->second;
    if (st.reg.mode != StudyMode::Irreversible) {
        throw ReversibleStudy("refusing to purge reversible study " + study_id);
    }

    std::size_t count = st.by_real.size();
    for (auto& [real, m] : st.by_real) {
        m.real_accession.clear();
        m.real_mrn.clear();
        m.purged = true;
        st.purged_mappings.push_back(std::move(m));
    }
    st.by_real.clear();
    st.anon_to_real.clear();
    st.mrn_codes.clear();
    st.purged = true;

    // Compact: the erased identifiers must leave no trace in the log.
    rewrite_log_locked();
    return count;
}

std::vector<Mapping> MappingStore::mappings_for(const std::string& study_id) const {
    std::scoped_lock lock(mu_);
    auto it = studies_.find(study_id);
    if (it == studies_.end()) throw UnknownStudy("unknown study: " + study_id);
    std::vector<Mapping> out = it->second.purged_mappings;
    for (const auto& [real, m] : it->second.by_real) out.push_back(m);
    return out;
}

void MappingStore::exclude(const std::string& accession) {
    std::scoped_lock lock(mu_);
    excluded_.insert(accession);
}

}  // namespace deid::pseudonym
