#include "deid/rules/scripts.hpp"

#include "deid/dicom/dictionary.hpp"
#include "deid/util/text.hpp"

#include <charconv>

namespace deid::rules {

namespace {

struct Token {
    std::string text;
    bool quoted = false;
};

// Splits one line into whitespace-separated tokens; double-quoted runs
// form a single token with no escape processing, so regex literals keep
// their backslashes. '#' outside quotes starts a comment.
std::vector<Token> tokenize(std::string_view line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') break;
        if (c == '"') {
            std::size_t end = line.find('"', i + 1);
            if (end == std::string_view::npos) {
                throw SyntaxError(lineno, "unterminated string literal");
            }
            out.push_back({std::string(line.substr(i + 1, end - i - 1)), true});
            i = end + 1;
            continue;
        }
        std::size_t end = i;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) &&
               line[end] != '"' && line[end] != '#') {
            ++end;
        }
        out.push_back({std::string(line.substr(i, end - i)), false});
        i = end;
    }
    return out;
}

struct Line {
    int number;
    std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    int n = 0;
    for (auto& raw : util::split(text, '\n')) {
        ++n;
        std::string_view t = util::trim(raw);
        if (!t.empty() && t.front() != '#') out.push_back({n, std::string(t)});
    }
    return out;
}

dicom::Tag resolve_attribute(const std::string& name, int lineno) {
    if (auto tag = dicom::Tag::parse(name)) return *tag;
    if (auto tag = dicom::tag_for_alias(name)) return *tag;
    throw UnknownAttributeAlias(lineno, name);
}

int parse_int(std::string_view s, int lineno, const char* what) {
    int v = 0;
    auto t = util::trim(s);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw SyntaxError(lineno, std::string("expected integer for ") + what + ", got '" +
                                      std::string(t) + "'");
    }
    return v;
}

dicom::Rect parse_rect(std::string_view csv, int lineno) {
    auto parts = util::split(csv, ',');
    if (parts.size() != 4) throw SyntaxError(lineno, "rect wants x,y,w,h");
    return dicom::Rect{parse_int(parts[0], lineno, "rect x"), parse_int(parts[1], lineno, "rect y"),
                       parse_int(parts[2], lineno, "rect w"), parse_int(parts[3], lineno, "rect h")};
}

}  // namespace

std::string_view anon_action_name(AnonAction a) {
    switch (a) {
        case AnonAction::Keep: return "keep";
        case AnonAction::Remove: return "remove";
        case AnonAction::Empty: return "empty";
        case AnonAction::Replace: return "replace";
        case AnonAction::Param: return "param";
        case AnonAction::HashUid: return "hashuid";
        case AnonAction::JitterDate: return "jitterdate";
    }
    return "?";
}

std::optional<std::string> ScriptParams::lookup(std::string_view name) const {
    if (name == "accession" && !accession.empty()) return accession;
    if (name == "mrn" && !mrn.empty()) return mrn;
    if (name == "jitter") return std::to_string(jitter_days);
    auto it = extra.find(std::string(name));
    if (it != extra.end()) return it->second;
    return std::nullopt;
}

FilterScript parse_filter_script(std::string_view text) {
    FilterScript fs;
    for (const Line& line : content_lines(text)) {
        auto tokens = tokenize(line.text, line.number);
        if (tokens.empty()) continue;

        if (tokens[0].text == "default") {
            if (tokens.size() != 2 || tokens[1].quoted) {
                throw SyntaxError(line.number, "default wants exactly one of: accept, reject");
            }
            if (tokens[1].text == "accept") fs.default_action = FilterAction::Accept;
            else if (tokens[1].text == "reject") fs.default_action = FilterAction::Reject;
            else throw SyntaxError(line.number, "default action must be accept or reject");
            continue;
        }

        FilterRule rule;
        if (tokens[0].text == "accept") rule.action = FilterAction::Accept;
        else if (tokens[0].text == "reject") rule.action = FilterAction::Reject;
        else throw SyntaxError(line.number, "expected accept, reject or default, got '" + tokens[0].text + "'");

        if (tokens.size() < 3) throw SyntaxError(line.number, "rule wants: action attribute operator ...");
        rule.attribute_name = tokens[1].text;
        rule.attribute = resolve_attribute(rule.attribute_name, line.number);

        const std::string& op = tokens[2].text;
        std::size_t next = 3;
        if (op == "equals" || op == "contains" || op == "matches_regex") {
            if (tokens.size() < 4 || !tokens[3].quoted) {
                throw SyntaxError(line.number, op + " wants a quoted literal");
            }
            rule.literal = tokens[3].text;
            next = 4;
            if (op == "equals") rule.op = FilterOp::Equals;
            else if (op == "contains") rule.op = FilterOp::Contains;
            else {
                rule.op = FilterOp::MatchesRegex;
                try {
                    rule.pattern = std::make_shared<const std::regex>(
                        rule.literal, std::regex::ECMAScript | std::regex::icase);
                } catch (const std::regex_error& e) {
                    throw SyntaxError(line.number, "bad regex: " + std::string(e.what()));
                }
            }
        } else if (op == "is_empty") {
            rule.op = FilterOp::IsEmpty;
        } else if (op == "is_present") {
            rule.op = FilterOp::IsPresent;
        } else if (op == "is_absent") {
            rule.op = FilterOp::IsAbsent;
        } else {
            throw SyntaxError(line.number, "unknown operator '" + op + "'");
        }

        if (next < tokens.size()) {
            if (tokens[next].text != "reason" || next + 1 >= tokens.size() ||
                !tokens[next + 1].quoted || next + 2 != tokens.size()) {
                throw SyntaxError(line.number, "trailing tokens; expected: reason \"<text>\"");
            }
            rule.reason = tokens[next + 1].text;
        }
        if (rule.reason.empty()) {
            rule.reason = rule.attribute_name + " " + op +
                          (rule.literal.empty() ? "" : " \"" + rule.literal + "\"");
        }
        fs.rules.push_back(std::move(rule));
    }
    return fs;
}

const ScrubEntry* ScrubScript::find(const ScrubKey& key) const {
    for (const auto& e : entries) {
        if (e.key == key) return &e;
    }
    return nullptr;
}

ScrubScript parse_scrub_script(std::string_view text) {
    ScrubScript ss;
    ScrubEntry* current = nullptr;

    for (const Line& line : content_lines(text)) {
        if (util::starts_with(line.text, "policy")) {
            auto tokens = tokenize(line.text, line.number);
            if (tokens.size() != 3 || tokens[1].text != "whitelist") {
                throw SyntaxError(line.number, "policy wants: policy whitelist <MODALITY>");
            }
            ss.whitelist_only_modalities.insert(tokens[2].text);
            current = nullptr;
            continue;
        }

        if (line.text.front() == '[') {
            if (line.text.back() != ']') throw SyntaxError(line.number, "unterminated section header");
            std::string_view body(line.text);
            body = body.substr(1, body.size() - 2);
            auto tokens = tokenize(body, line.number);

            ScrubEntry entry;
            entry.line = line.number;
            bool have_modality = false, have_make = false, have_model = false, have_rows = false,
                 have_cols = false;
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                // Re-join split "key=" "value" forms produced by quoting.
                std::string key;
                std::string value;
                bool quoted = false;
                auto eq = tokens[i].text.find('=');
                if (eq != std::string::npos && eq + 1 < tokens[i].text.size()) {
                    key = tokens[i].text.substr(0, eq);
                    value = tokens[i].text.substr(eq + 1);
                } else if (eq != std::string::npos && i + 1 < tokens.size()) {
                    key = tokens[i].text.substr(0, eq);
                    value = tokens[i + 1].text;
                    quoted = tokens[i + 1].quoted;
                    ++i;
                } else {
                    throw SyntaxError(line.number, "expected key=value, got '" + tokens[i].text + "'");
                }
                (void)quoted;
                if (key == "modality") {
                    entry.key.modality = value;
                    have_modality = true;
                } else if (key == "make") {
                    entry.key.make_lower = util::to_lower(value);
                    have_make = true;
                } else if (key == "model") {
                    entry.key.model_lower = util::to_lower(value);
                    have_model = true;
                } else if (key == "rows") {
                    entry.key.rows = parse_int(value, line.number, "rows");
                    have_rows = true;
                } else if (key == "cols") {
                    entry.key.cols = parse_int(value, line.number, "cols");
                    have_cols = true;
                } else {
                    throw SyntaxError(line.number, "unknown section key '" + key + "'");
                }
            }
            if (!(have_modality && have_make && have_model && have_rows && have_cols)) {
                throw SyntaxError(line.number, "section wants modality, make, model, rows, cols");
            }
            if (ss.find(entry.key) != nullptr) {
                throw DuplicateKey(line.number, "scrub entry for modality=" + entry.key.modality +
                                                    " make=" + entry.key.make_lower +
                                                    " model=" + entry.key.model_lower + " " +
                                                    std::to_string(entry.key.rows) + "x" +
                                                    std::to_string(entry.key.cols));
            }
            ss.entries.push_back(std::move(entry));
            current = &ss.entries.back();
            continue;
        }

        if (util::starts_with(line.text, "rect")) {
            if (!current) throw SyntaxError(line.number, "rect outside a section");
            auto rest = util::trim(std::string_view(line.text).substr(4));
            dicom::Rect r = parse_rect(rest, line.number);
            if (r.x < 0 || r.y < 0 || r.w < 0 || r.h < 0 || r.x + r.w > current->key.cols ||
                r.y + r.h > current->key.rows) {
                throw SyntaxError(line.number, "rect " + r.str() + " outside " +
                                                   std::to_string(current->key.cols) + "x" +
                                                   std::to_string(current->key.rows));
            }
            current->rects.push_back(r);
            continue;
        }

        throw SyntaxError(line.number, "expected policy, section header or rect");
    }
    return ss;
}

AnonScript parse_anon_script(std::string_view text) {
    AnonScript as;
    bool saw_default = false, saw_private = false;

    for (const Line& line : content_lines(text)) {
        auto assign = line.text.find(":=");
        if (assign == std::string::npos) {
            throw SyntaxError(line.number, "expected '<target> := <action>'");
        }
        std::string target(util::trim(std::string_view(line.text).substr(0, assign)));
        std::string_view rhs_full = util::trim(std::string_view(line.text).substr(assign + 2));
        // Strip a trailing comment.
        if (auto hash = rhs_full.find('#'); hash != std::string_view::npos) {
            rhs_full = util::trim(rhs_full.substr(0, hash));
        }
        std::string rhs(rhs_full);

        AnonRule rule;
        if (rhs == "keep") rule.action = AnonAction::Keep;
        else if (rhs == "remove") rule.action = AnonAction::Remove;
        else if (rhs == "empty") rule.action = AnonAction::Empty;
        else if (rhs == "hashuid") rule.action = AnonAction::HashUid;
        else if (rhs == "jitterdate") rule.action = AnonAction::JitterDate;
        else if (util::starts_with(rhs, "replace(")) {
            if (rhs.size() < 11 || rhs.substr(rhs.size() - 2) != "\")" || rhs[8] != '"') {
                throw SyntaxError(line.number, "replace wants: replace(\"<literal>\")");
            }
            rule.action = AnonAction::Replace;
            rule.arg = rhs.substr(9, rhs.size() - 11);
        } else if (util::starts_with(rhs, "param(")) {
            if (rhs.back() != ')') throw SyntaxError(line.number, "param wants: param(<name>)");
            rule.action = AnonAction::Param;
            rule.arg = std::string(util::trim(std::string_view(rhs).substr(6, rhs.size() - 7)));
            if (rule.arg.empty()) throw SyntaxError(line.number, "param wants a name");
        } else {
            throw SyntaxError(line.number, "unknown action '" + rhs + "'");
        }

        if (target == "default" || target == "private") {
            if (rule.action != AnonAction::Keep && rule.action != AnonAction::Remove) {
                throw SyntaxError(line.number, target + " action must be remove or keep");
            }
            bool& seen = (target == "default") ? saw_default : saw_private;
            if (seen) throw DuplicateKey(line.number, target + " action");
            seen = true;
            (target == "default" ? as.default_action : as.private_action) = rule.action;
            continue;
        }

        auto tag = dicom::Tag::parse(target);
        if (!tag) throw SyntaxError(line.number, "expected (GGGG,EEEE), default or private; got '" + target + "'");
        if (as.actions.count(*tag)) throw DuplicateKey(line.number, "action for " + tag->str());
        as.actions.emplace(*tag, std::move(rule));
    }
    return as;
}

}  // namespace deid::rules
