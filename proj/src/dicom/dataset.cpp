#include "deid/dicom/dataset.hpp"

#include <algorithm>

namespace deid::dicom {

namespace {
auto lower_bound_tag(const std::vector<Element>& v, Tag tag) {
    return std::lower_bound(v.begin(), v.end(), tag,
                            [](const Element& e, Tag t) { return e.tag < t; });
}
}  // namespace

const Element* DataSet::find(Tag tag) const {
    auto it = lower_bound_tag(elements_, tag);
    if (it != elements_.end() && it->tag == tag) return &*it;
    return nullptr;
}

std::optional<std::string> DataSet::string_value(Tag tag) const {
    const Element* e = find(tag);
    if (!e) return std::nullopt;
    return e->as_string();
}

std::vector<std::string> DataSet::string_components(Tag tag) const {
    const Element* e = find(tag);
    if (!e) return {};
    return e->components();
}

std::optional<std::int64_t> DataSet::int_value(Tag tag) const {
    const Element* e = find(tag);
    if (!e) return std::nullopt;
    return e->as_int();
}

void DataSet::set(Element e) {
    auto it = lower_bound_tag(elements_, e.tag);
    if (it != elements_.end() && it->tag == e.tag) {
        *it = std::move(e);
    } else {
        elements_.insert(it, std::move(e));
    }
}

void DataSet::set_string(Tag tag, Vr vr, std::string_view text) {
    set(Element::of_string(tag, vr, text));
}

bool DataSet::remove(Tag tag) {
    auto it = lower_bound_tag(elements_, tag);
    if (it != elements_.end() && it->tag == tag) {
        elements_.erase(it);
        return true;
    }
    return false;
}

}  // namespace deid::dicom
