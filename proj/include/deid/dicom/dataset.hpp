#pragma once

#include "deid/dicom/element.hpp"
#include "deid/dicom/uids.hpp"

#include <optional>
#include <string>
#include <vector>

namespace deid::dicom {

/// Tag-ordered attribute collection plus the transfer syntax the file was
/// encoded with. Strictly ascending tag order and at most one element per
/// tag are maintained by construction.
///
/// Content equality ignores the transfer syntax: it is a property of the
/// encoding, not of the data.
class DataSet {
public:
    const Element* find(Tag tag) const;
    bool contains(Tag tag) const { return find(tag) != nullptr; }

    /// Trimmed string value, or nullopt when the tag is absent.
    std::optional<std::string> string_value(Tag tag) const;

    /// Multi-value components; empty when the tag is absent.
    std::vector<std::string> string_components(Tag tag) const;

    std::optional<std::int64_t> int_value(Tag tag) const;

    /// Inserts or replaces, preserving tag order.
    void set(Element e);
    void set_string(Tag tag, Vr vr, std::string_view text);

    /// Returns true when an element was removed.
    bool remove(Tag tag);

    const std::vector<Element>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }

    const std::string& transfer_syntax() const { return transfer_syntax_; }
    void set_transfer_syntax(std::string uid) { transfer_syntax_ = std::move(uid); }

    bool operator==(const DataSet& other) const { return elements_ == other.elements_; }

private:
    std::vector<Element> elements_;
    std::string transfer_syntax_{uids::kExplicitVrLittleEndian};
};

}  // namespace deid::dicom
