#include "deid/dicom/element.hpp"

#include "deid/util/text.hpp"

#include <charconv>
#include <cstdio>

namespace deid::dicom {

std::string Tag::str() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "(%04X,%04X)", group, element);
    return buf;
}

std::optional<Tag> Tag::parse(std::string_view text) {
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
        text = text.substr(1, text.size() - 2);
    }
    if (text.size() != 9 || text[4] != ',') return std::nullopt;
    auto hex4 = [](std::string_view s) -> std::optional<std::uint16_t> {
        std::uint16_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
        if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
        return v;
    };
    auto g = hex4(text.substr(0, 4));
    auto e = hex4(text.substr(5, 4));
    if (!g || !e) return std::nullopt;
    return Tag{*g, *e};
}

bool Vr::has_long_length() const {
    switch (a_) {
        case 'O': return b_ == 'B' || b_ == 'D' || b_ == 'F' || b_ == 'L' || b_ == 'W';
        case 'S': return b_ == 'Q';
        case 'U': return b_ == 'C' || b_ == 'N' || b_ == 'R' || b_ == 'T';
        default: return false;
    }
}

bool Vr::known() const {
    static constexpr const char* kCodes[] = {
        "AE", "AS", "AT", "CS", "DA", "DS", "DT", "FL", "FD", "IS", "LO",
        "LT", "OB", "OD", "OF", "OL", "OW", "PN", "SH", "SL", "SQ", "SS",
        "ST", "TM", "UC", "UI", "UL", "UN", "UR", "US", "UT"};
    for (const char* c : kCodes) {
        if (c[0] == a_ && c[1] == b_) return true;
    }
    return false;
}

bool Vr::is_string() const {
    switch (a_) {
        case 'A': return b_ == 'E' || b_ == 'S';
        case 'C': return b_ == 'S';
        case 'D': return b_ == 'A' || b_ == 'S' || b_ == 'T';
        case 'I': return b_ == 'S';
        case 'L': return b_ == 'O' || b_ == 'T';
        case 'P': return b_ == 'N';
        case 'S': return b_ == 'H' || b_ == 'T';
        case 'T': return b_ == 'M';
        case 'U': return b_ == 'C' || b_ == 'I' || b_ == 'R' || b_ == 'T';
        default: return false;
    }
}

std::optional<Vr> Vr::parse(std::string_view s) {
    if (s.size() != 2) return std::nullopt;
    Vr v{s[0], s[1]};
    if (!v.known()) return std::nullopt;
    return v;
}

std::string Element::as_string() const {
    std::string_view sv(reinterpret_cast<const char*>(value.data()), value.size());
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\0')) sv.remove_suffix(1);
    return std::string(sv);
}

std::vector<std::string> Element::components() const {
    std::vector<std::string> out;
    for (const auto& part : util::split(as_string(), '\\')) {
        out.emplace_back(util::trim(part));
    }
    return out;
}

std::optional<std::int64_t> Element::as_int() const {
    if (vr == vr::US && value.size() >= 2) {
        return static_cast<std::int64_t>(value[0]) | (static_cast<std::int64_t>(value[1]) << 8);
    }
    if (vr == vr::UL && value.size() >= 4) {
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | value[i];
        return v;
    }
    if (vr == vr::SS && value.size() >= 2) {
        auto u = static_cast<std::uint16_t>(value[0] | (value[1] << 8));
        return static_cast<std::int16_t>(u);
    }
    if (vr == vr::SL && value.size() >= 4) {
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | value[i];
        return static_cast<std::int32_t>(v);
    }
    if (vr == vr::IS || vr == vr::DS) {
        auto s = util::trim(as_string());
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size()) return v;
    }
    return std::nullopt;
}

Element Element::of_string(Tag tag, Vr vr, std::string_view text) {
    Element e;
    e.tag = tag;
    e.vr = vr;
    e.value.assign(text.begin(), text.end());
    if (e.value.size() % 2 != 0) {
        e.value.push_back(vr == vr::UI ? '\0' : ' ');
    }
    return e;
}

Element Element::of_u16(Tag tag, std::uint16_t v) {
    Element e;
    e.tag = tag;
    e.vr = vr::US;
    e.value = {static_cast<std::uint8_t>(v & 0xFF), static_cast<std::uint8_t>(v >> 8)};
    return e;
}

Element Element::of_bytes(Tag tag, Vr vr, std::vector<std::uint8_t> bytes) {
    Element e;
    e.tag = tag;
    e.vr = vr;
    e.value = std::move(bytes);
    if (e.value.size() % 2 != 0) e.value.push_back(0);
    return e;
}

}  // namespace deid::dicom
