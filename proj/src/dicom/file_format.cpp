#include "deid/dicom/file_format.hpp"

#include "deid/dicom/dictionary.hpp"

#include <cstring>
#include <string>

namespace deid::dicom {

namespace {

constexpr std::uint32_t kUndefinedLength = 0xFFFFFFFFu;

// Synthesized file meta constants. The implementation class UID uses the
// UUID-derived "2.25" root, which needs no registry assignment.
constexpr std::string_view kImplementationClassUid = "2.25.316555108541206444132406958169697812378";
constexpr std::string_view kImplementationVersionName = "DEID_10";
constexpr std::string_view kDefaultSopClassUid = "1.2.840.10008.5.1.4.1.1.7";
constexpr std::string_view kDefaultSopInstanceUid = "2.25.0";

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return pos_ == data_.size(); }

    void seek(std::size_t pos) { pos_ = pos; }

    std::uint16_t u16() {
        need(2, "16-bit field");
        std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4, "32-bit field");
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | data_[pos_ + i];
        pos_ += 4;
        return v;
    }

    Tag tag() {
        std::uint16_t g = u16();
        std::uint16_t e = u16();
        return Tag{g, e};
    }

    Tag peek_tag() {
        std::size_t saved = pos_;
        Tag t = tag();
        pos_ = saved;
        return t;
    }

    std::span<const std::uint8_t> bytes(std::size_t n) {
        need(n, "value field");
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    void skip(std::size_t n) {
        need(n, "value field");
        pos_ += n;
    }

    std::span<const std::uint8_t> slice(std::size_t from, std::size_t to) const {
        return data_.subspan(from, to - from);
    }

private:
    void need(std::size_t n, const char* what) const {
        if (remaining() < n) {
            throw MalformedFile(std::string("truncated file while reading ") + what);
        }
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

struct RawElement {
    Tag tag;
    Vr vr;
    std::span<const std::uint8_t> value;
    bool undefined_length = false;
};

void scan_item_content(Reader& r, bool explicit_vr);

// Advances past one sequence body encoded with undefined length and
// returns the content span, excluding the trailing delimitation item.
std::span<const std::uint8_t> scan_sequence(Reader& r, bool explicit_vr) {
    std::size_t start = r.pos();
    while (true) {
        std::size_t before = r.pos();
        Tag t = r.tag();
        if (t == tags::kSequenceDelimitation) {
            std::uint32_t len = r.u32();
            if (len != 0) throw MalformedFile("sequence delimitation item with nonzero length");
            return r.slice(start, before);
        }
        if (t != tags::kItem) {
            throw MalformedFile("expected item inside sequence, got " + t.str());
        }
        std::uint32_t len = r.u32();
        if (len == kUndefinedLength) {
            scan_item_content(r, explicit_vr);
        } else {
            r.skip(len);
        }
    }
}

RawElement read_raw_element(Reader& r, bool explicit_vr);

// Advances past the element stream of one undefined-length item.
void scan_item_content(Reader& r, bool explicit_vr) {
    while (true) {
        Tag t = r.peek_tag();
        if (t == tags::kItemDelimitation) {
            r.tag();
            std::uint32_t len = r.u32();
            if (len != 0) throw MalformedFile("item delimitation with nonzero length");
            return;
        }
        read_raw_element(r, explicit_vr);
    }
}

RawElement read_raw_element(Reader& r, bool explicit_vr) {
    RawElement e;
    e.tag = r.tag();
    if (e.tag.group == 0xFFFE) {
        throw MalformedFile("unexpected delimitation item " + e.tag.str());
    }

    std::uint32_t length = 0;
    if (explicit_vr) {
        auto vb = r.bytes(2);
        auto vr = Vr::parse(std::string_view(reinterpret_cast<const char*>(vb.data()), 2));
        if (!vr) throw MalformedFile("unrecognized VR at " + e.tag.str());
        e.vr = *vr;
        if (e.vr.has_long_length()) {
            r.u16();  // reserved
            length = r.u32();
        } else {
            length = r.u16();
        }
    } else {
        e.vr = vr_for_tag(e.tag);
        length = r.u32();
    }

    if (length == kUndefinedLength) {
        // Only sequences may use undefined length here; encapsulated pixel
        // data cannot occur in the supported transfer syntaxes.
        if (e.vr != vr::SQ && e.vr != vr::UN) {
            throw MalformedFile("undefined length on non-sequence element " + e.tag.str());
        }
        // An undefined-length UN value is encoded like an implicit VR
        // sequence regardless of the file's encoding.
        bool inner_explicit = (e.vr == vr::SQ) ? explicit_vr : false;
        e.value = scan_sequence(r, inner_explicit);
        e.undefined_length = true;
        return e;
    }

    if (length % 2 != 0) {
        throw MalformedFile("odd value length " + std::to_string(length) + " at " + e.tag.str());
    }
    e.value = r.bytes(length);
    return e;
}

bool syntax_supported(std::string_view uid) {
    return uid == uids::kImplicitVrLittleEndian || uid == uids::kExplicitVrLittleEndian;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void write_element_explicit(std::vector<std::uint8_t>& out, const Element& e) {
    if (e.value.size() % 2 != 0) {
        throw Error("internal: odd-length value at " + e.tag.str());
    }
    put_u16(out, e.tag.group);
    put_u16(out, e.tag.element);
    out.push_back(static_cast<std::uint8_t>(e.vr.first()));
    out.push_back(static_cast<std::uint8_t>(e.vr.second()));
    if (e.vr.has_long_length()) {
        put_u16(out, 0);
        if (e.undefined_length) {
            put_u32(out, kUndefinedLength);
            out.insert(out.end(), e.value.begin(), e.value.end());
            put_u16(out, tags::kSequenceDelimitation.group);
            put_u16(out, tags::kSequenceDelimitation.element);
            put_u32(out, 0);
            return;
        }
        put_u32(out, static_cast<std::uint32_t>(e.value.size()));
    } else {
        if (e.value.size() > 0xFFFF) {
            throw Error("value too long for VR " + e.vr.str() + " at " + e.tag.str());
        }
        put_u16(out, static_cast<std::uint16_t>(e.value.size()));
    }
    out.insert(out.end(), e.value.begin(), e.value.end());
}

}  // namespace

DataSet parse_file(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 132) {
        throw MalformedFile("file too small for preamble and magic (" +
                            std::to_string(bytes.size()) + " bytes)");
    }
    if (std::memcmp(bytes.data() + 128, "DICM", 4) != 0) {
        throw MalformedFile("missing DICM magic");
    }

    Reader r(bytes);
    r.seek(132);

    // File meta group, always Explicit VR Little Endian.
    RawElement group_length = read_raw_element(r, /*explicit_vr=*/true);
    if (group_length.tag != tags::kFileMetaGroupLength || group_length.value.size() != 4) {
        throw MalformedFile("file meta group length element missing");
    }
    std::uint32_t meta_len = 0;
    for (int i = 3; i >= 0; --i) meta_len = (meta_len << 8) | group_length.value[i];
    std::size_t meta_end = r.pos() + meta_len;
    if (meta_end > bytes.size()) throw MalformedFile("file meta group length exceeds file");

    std::string transfer_syntax;
    while (r.pos() < meta_end) {
        RawElement e = read_raw_element(r, /*explicit_vr=*/true);
        if (e.tag.group != 0x0002) throw MalformedFile("non-meta element inside file meta group");
        if (e.tag == tags::kTransferSyntaxUid) {
            Element tmp{e.tag, e.vr, {e.value.begin(), e.value.end()}};
            transfer_syntax = tmp.as_string();
        }
    }
    if (transfer_syntax.empty()) throw MalformedFile("transfer syntax UID missing from file meta");
    if (!syntax_supported(transfer_syntax)) throw UnsupportedTransferSyntax(transfer_syntax);

    bool explicit_vr = transfer_syntax == uids::kExplicitVrLittleEndian;

    DataSet ds;
    ds.set_transfer_syntax(transfer_syntax);
    Tag last{0, 0};
    bool first = true;
    std::vector<Element> elements;
    while (!r.at_end()) {
        RawElement raw = read_raw_element(r, explicit_vr);
        if (raw.tag.group == 0x0002) throw MalformedFile("file meta element inside dataset");
        if (!first && !(last < raw.tag)) {
            throw MalformedFile("tag order violation at " + raw.tag.str());
        }
        last = raw.tag;
        first = false;
        if (raw.tag.element == 0x0000) continue;  // group lengths are not content
        Element e;
        e.tag = raw.tag;
        e.vr = raw.vr;
        e.value.assign(raw.value.begin(), raw.value.end());
        e.undefined_length = raw.undefined_length;
        elements.push_back(std::move(e));
    }
    for (auto& e : elements) ds.set(std::move(e));
    return ds;
}

std::vector<std::uint8_t> write_file(const DataSet& ds) {
    std::vector<std::uint8_t> out;
    out.assign(128, 0);
    out.push_back('D');
    out.push_back('I');
    out.push_back('C');
    out.push_back('M');

    std::string sop_class(kDefaultSopClassUid);
    std::string sop_instance(kDefaultSopInstanceUid);
    if (auto v = ds.string_value(tags::kSopClassUid); v && !v->empty()) sop_class = *v;
    if (auto v = ds.string_value(tags::kSopInstanceUid); v && !v->empty()) sop_instance = *v;

    std::vector<std::uint8_t> meta;
    write_element_explicit(meta, Element::of_bytes(tags::kFileMetaVersion, vr::OB, {0x00, 0x01}));
    write_element_explicit(meta, Element::of_string(tags::kMediaStorageSopClassUid, vr::UI, sop_class));
    write_element_explicit(meta, Element::of_string(tags::kMediaStorageSopInstanceUid, vr::UI, sop_instance));
    write_element_explicit(meta, Element::of_string(tags::kTransferSyntaxUid, vr::UI, uids::kExplicitVrLittleEndian));
    write_element_explicit(meta, Element::of_string(tags::kImplementationClassUid, vr::UI, kImplementationClassUid));
    write_element_explicit(meta, Element::of_string(tags::kImplementationVersionName, vr::SH, kImplementationVersionName));

    Element len;
    len.tag = tags::kFileMetaGroupLength;
    len.vr = vr::UL;
    len.value.resize(4);
    std::uint32_t n = static_cast<std::uint32_t>(meta.size());
    for (int i = 0; i < 4; ++i) len.value[i] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xFF);
    write_element_explicit(out, len);
    out.insert(out.end(), meta.begin(), meta.end());

    for (const Element& e : ds.elements()) {
        if (e.tag.group == 0x0002) continue;  // file meta is synthesized above
        write_element_explicit(out, e);
    }
    return out;
}

}  // namespace deid::dicom
