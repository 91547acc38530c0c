#pragma once

#include "deid/dicom/tag.hpp"
#include "deid/dicom/vr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deid::dicom {

/// One dataset attribute: tag, VR, and the raw (even-length) value bytes.
/// The decoded views below are computed from the raw bytes, so a decoded
/// value always round-trips to the identical encoding.
struct Element {
    Tag tag;
    Vr vr;
    std::vector<std::uint8_t> value;

    /// Set for sequences captured verbatim from an undefined-length
    /// encoding; the writer re-emits them with the same framing.
    bool undefined_length = false;

    bool operator==(const Element&) const = default;

    bool empty() const { return value.empty(); }
    std::size_t length() const { return value.size(); }

    /// Value as text with trailing padding (space or NUL) stripped.
    std::string as_string() const;

    /// Backslash-separated components of a multi-valued attribute,
    /// each stripped of surrounding whitespace.
    std::vector<std::string> components() const;

    /// Integer view: binary for US/UL/SS/SL, decimal text for IS/DS.
    std::optional<std::int64_t> as_int() const;

    /// Builds a text element padded to even length (NUL for UI, space
    /// otherwise).
    static Element of_string(Tag tag, Vr vr, std::string_view text);

    static Element of_u16(Tag tag, std::uint16_t v);

    static Element of_bytes(Tag tag, Vr vr, std::vector<std::uint8_t> bytes);
};

}  // namespace deid::dicom
