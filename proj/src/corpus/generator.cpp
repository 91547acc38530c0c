#include "deid/corpus/generator.hpp"

#include "deid/rules/default_scripts.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <random>

namespace deid::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kLedgerHeader = R"({"format":"deid-corpus-ledger","version":1})";

json rects_to_json(const std::vector<dicom::Rect>& rects) {
    json arr = json::array();
    for (const auto& r : rects) arr.push_back({r.x, r.y, r.w, r.h});
    return arr;
}

std::vector<dicom::Rect> rects_from_json(const json& arr) {
    std::vector<dicom::Rect> out;
    for (const auto& r : arr) {
        out.push_back({r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(),
                       r.at(3).get<int>()});
    }
    return out;
}

std::string zero_pad(std::uint64_t v, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*llu", width, static_cast<unsigned long long>(v));
    return buf;
}

void write_file_bytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error("cannot write " + p.string());
}

void write_text(const fs::path& p, std::string_view text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error("cannot write " + p.string());
}

constexpr std::string_view kRegressionSuite =
    R"(Feature: Anonymize CT images filtering where appropriate

Background:

Given the pipeline uses the anonymizer script, "default-anonymizer.script"
Given the pipeline uses the pixel script, "default-scrubber.script"
Given the pipeline uses the filter script, "default-filter.script"
And script parameter "accession" is "ACN123"
And script parameter "mrn" is "MRN123"
And script parameter "jitter" is "-6"

Scenario: All files in the PT/Anonymize folder should be anonymized
  Given the DICOM directory "dicom-phi/PT/Anonymize"
  When ran through the deid pipeline
  Then the images SHOULD be anonymized
  And the dates should be jittered by -6 days

Scenario: REG-PCT01 GE PET/CT fusion
  Given the DICOM directory "dicom-phi/PT/Scrub/GE/Discovery/512x512"
  When ran through the deid pipeline
  Then the resulting images should be scrubbed at 256,0,256,22
  And the resulting images should be scrubbed at 300,22,212,80
  And the resulting images should be scrubbed at 10,478,100,10

Scenario: All files in the PT/Filter folder should be filtered
  Given the DICOM directory "dicom-phi/PT/Filter"
  When ran through the deid pipeline
  Then the images SHOULD NOT pass the filter
)";

}  // namespace

std::string_view expect_name(Expect e) {
    switch (e) {
        case Expect::Filtered: return "filtered";
        case Expect::Anonymized: return "anonymized";
        case Expect::Scrubbed: return "scrubbed+anonymized";
        case Expect::Error: return "error";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// SyntheticInstance: a deliberately separate Part-10 emitter. It shares no
// serialization code with dicom::write_file, so the two implementations
// cross-check each other through the round-trip tests.

void SyntheticInstance::set_string(dicom::Tag tag, const char vr[2], std::string_view value) {
    Raw raw;
    raw.vr[0] = vr[0];
    raw.vr[1] = vr[1];
    raw.bytes.assign(value.begin(), value.end());
    if (raw.bytes.size() % 2 != 0) {
        raw.bytes.push_back(vr[0] == 'U' && vr[1] == 'I' ? '\0' : ' ');
    }
    elements_[tag] = std::move(raw);
}

void SyntheticInstance::set_u16(dicom::Tag tag, std::uint16_t value) {
    Raw raw;
    raw.vr[0] = 'U';
    raw.vr[1] = 'S';
    raw.bytes = {static_cast<std::uint8_t>(value & 0xFF), static_cast<std::uint8_t>(value >> 8)};
    elements_[tag] = std::move(raw);
}

void SyntheticInstance::set_pixels(int rows, int cols, int bits, int samples, int frames,
                                   std::uint8_t fill, const std::vector<dicom::Rect>& markers) {
    set_u16(dicom::tags::kRows, static_cast<std::uint16_t>(rows));
    set_u16(dicom::tags::kColumns, static_cast<std::uint16_t>(cols));
    set_u16(dicom::tags::kBitsAllocated, static_cast<std::uint16_t>(bits));
    set_u16(dicom::tags::kBitsStored, static_cast<std::uint16_t>(bits));
    set_u16(dicom::tags::kHighBit, static_cast<std::uint16_t>(bits - 1));
    set_u16(dicom::tags::kPixelRepresentation, 0);
    set_u16(dicom::tags::kSamplesPerPixel, static_cast<std::uint16_t>(samples));
    set_string(dicom::tags::kPhotometricInterpretation, "CS",
               samples == 3 ? "RGB" : "MONOCHROME2");
    if (frames > 1) {
        set_string(dicom::tags::kNumberOfFrames, "IS", std::to_string(frames));
    }

    std::size_t bpp = static_cast<std::size_t>(bits / 8) * samples;
    std::size_t frame_size = static_cast<std::size_t>(rows) * cols * bpp;
    Raw raw;
    raw.vr[0] = 'O';
    raw.vr[1] = bits == 8 ? 'B' : 'W';
    raw.bytes.assign(frame_size * frames, fill);
    for (int f = 0; f < frames; ++f) {
        std::uint8_t* base = raw.bytes.data() + static_cast<std::size_t>(f) * frame_size;
        for (const auto& m : markers) {
            for (int row = m.y; row < m.y + m.h; ++row) {
                std::uint8_t* p = base + (static_cast<std::size_t>(row) * cols + m.x) * bpp;
                std::fill(p, p + static_cast<std::size_t>(m.w) * bpp, 0xEE);
            }
        }
    }
    if (raw.bytes.size() % 2 != 0) raw.bytes.push_back(0);
    elements_[dicom::tags::kPixelData] = std::move(raw);
}

std::vector<std::uint8_t> SyntheticInstance::encode(bool implicit_vr,
                                                    std::string_view transfer_syntax_override) const {
    std::vector<std::uint8_t> out(128, 0);
    const char magic[4] = {'D', 'I', 'C', 'M'};
    out.insert(out.end(), magic, magic + 4);

    auto le16 = [](std::vector<std::uint8_t>& v, std::uint16_t x) {
        v.push_back(static_cast<std::uint8_t>(x & 0xFF));
        v.push_back(static_cast<std::uint8_t>(x >> 8));
    };
    auto le32 = [](std::vector<std::uint8_t>& v, std::uint32_t x) {
        v.push_back(static_cast<std::uint8_t>(x & 0xFF));
        v.push_back(static_cast<std::uint8_t>((x >> 8) & 0xFF));
        v.push_back(static_cast<std::uint8_t>((x >> 16) & 0xFF));
        v.push_back(static_cast<std::uint8_t>((x >> 24) & 0xFF));
    };
    auto is_long_vr = [](const char vr[2]) {
        std::string_view v(vr, 2);
        return v == "OB" || v == "OW" || v == "OF" || v == "OD" || v == "OL" || v == "SQ" ||
               v == "UC" || v == "UR" || v == "UT" || v == "UN";
    };
    auto emit_explicit = [&](std::vector<std::uint8_t>& v, dicom::Tag tag, const char vr[2],
                             const std::vector<std::uint8_t>& bytes) {
        le16(v, tag.group);
        le16(v, tag.element);
        v.push_back(static_cast<std::uint8_t>(vr[0]));
        v.push_back(static_cast<std::uint8_t>(vr[1]));
        if (is_long_vr(vr)) {
            le16(v, 0);
            le32(v, static_cast<std::uint32_t>(bytes.size()));
        } else {
            le16(v, static_cast<std::uint16_t>(bytes.size()));
        }
        v.insert(v.end(), bytes.begin(), bytes.end());
    };
    auto emit_implicit = [&](std::vector<std::uint8_t>& v, dicom::Tag tag,
                             const std::vector<std::uint8_t>& bytes) {
        le16(v, tag.group);
        le16(v, tag.element);
        le32(v, static_cast<std::uint32_t>(bytes.size()));
        v.insert(v.end(), bytes.begin(), bytes.end());
    };

    std::string syntax;
    if (!transfer_syntax_override.empty()) syntax = std::string(transfer_syntax_override);
    else if (implicit_vr) syntax = "1.2.840.10008.1.2";
    else syntax = "1.2.840.10008.1.2.1";

    auto padded = [](std::string s, char pad) {
        if (s.size() % 2 != 0) s.push_back(pad);
        return s;
    };

    std::string sop_class;
    std::string sop_uid;
    if (auto it = elements_.find(dicom::tags::kSopClassUid); it != elements_.end()) {
        sop_class.assign(it->second.bytes.begin(), it->second.bytes.end());
    }
    if (auto it = elements_.find(dicom::tags::kSopInstanceUid); it != elements_.end()) {
        sop_uid.assign(it->second.bytes.begin(), it->second.bytes.end());
    }

    std::vector<std::uint8_t> meta;
    emit_explicit(meta, dicom::tags::kFileMetaVersion, "OB", {0x00, 0x01});
    auto emit_meta_str = [&](dicom::Tag tag, const std::string& s) {
        std::string v = padded(s, '\0');
        emit_explicit(meta, tag, "UI", std::vector<std::uint8_t>(v.begin(), v.end()));
    };
    emit_meta_str(dicom::tags::kMediaStorageSopClassUid,
                  sop_class.empty() ? "1.2.840.10008.5.1.4.1.1.7" : sop_class);
    emit_meta_str(dicom::tags::kMediaStorageSopInstanceUid, sop_uid.empty() ? "2.25.0" : sop_uid);
    emit_meta_str(dicom::tags::kTransferSyntaxUid, syntax);
    emit_meta_str(dicom::tags::kImplementationClassUid, "2.25.77630737229837971176641976007701");

    std::vector<std::uint8_t> group_len(4);
    std::uint32_t n = static_cast<std::uint32_t>(meta.size());
    for (int i = 0; i < 4; ++i) group_len[i] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xFF);
    emit_explicit(out, dicom::tags::kFileMetaGroupLength, "UL", group_len);
    out.insert(out.end(), meta.begin(), meta.end());

    for (const auto& [tag, raw] : elements_) {
        if (implicit_vr) emit_implicit(out, tag, raw.bytes);
        else emit_explicit(out, tag, raw.vr, raw.bytes);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string LedgerEntry::to_json() const {
    json j{{"path", path},
           {"class", class_label},
           {"accession", accession},
           {"mrn", mrn},
           {"sop_uid", sop_uid},
           {"study_date", study_date},
           {"phi", phi_strings},
           {"markers", rects_to_json(markers)},
           {"expect", expected_outcome},
           {"expect_reason", expected_reason},
           {"expect_rects", rects_to_json(expected_rects)}};
    return j.dump();
}

LedgerEntry LedgerEntry::from_json(const std::string& text) {
    json j = json::parse(text);
    LedgerEntry e;
    e.path = j.at("path").get<std::string>();
    e.class_label = j.value("class", "");
    e.accession = j.value("accession", "");
    e.mrn = j.value("mrn", "");
    e.sop_uid = j.value("sop_uid", "");
    e.study_date = j.value("study_date", "");
    e.phi_strings = j.value("phi", std::vector<std::string>{});
    if (j.contains("markers")) e.markers = rects_from_json(j.at("markers"));
    e.expected_outcome = j.value("expect", "");
    e.expected_reason = j.value("expect_reason", "");
    if (j.contains("expect_rects")) e.expected_rects = rects_from_json(j.at("expect_rects"));
    return e;
}

namespace {

json class_to_json(const InstanceClass& c) {
    return json{{"label", c.label},
                {"count", c.count},
                {"instances_per_accession", c.instances_per_accession},
                {"modality", c.modality},
                {"make", c.make},
                {"model", c.model},
                {"sop_class", c.sop_class},
                {"image_type", c.image_type},
                {"rows", c.rows},
                {"cols", c.cols},
                {"frames", c.frames},
                {"bits", c.bits},
                {"samples", c.samples},
                {"with_pixels", c.with_pixels},
                {"include_conversion_type", c.include_conversion_type},
                {"conversion_type", c.conversion_type},
                {"burned_in", c.burned_in},
                {"implicit_vr", c.implicit_vr},
                {"force_transfer_syntax", c.force_transfer_syntax},
                {"markers", rects_to_json(c.markers)},
                {"expected", std::string(expect_name(c.expected))},
                {"expected_reason", c.expected_reason},
                {"expected_rects", rects_to_json(c.expected_rects)}};
}

InstanceClass class_from_json(const json& j) {
    InstanceClass c;
    c.label = j.at("label").get<std::string>();
    c.count = j.value("count", 1);
    c.instances_per_accession = j.value("instances_per_accession", 1);
    c.modality = j.value("modality", "CT");
    c.make = j.value("make", "SynthWorks");
    c.model = j.value("model", "Unit1");
    c.sop_class = j.value("sop_class", "1.2.840.10008.5.1.4.1.1.2");
    c.image_type = j.value("image_type", "ORIGINAL\\PRIMARY\\AXIAL");
    c.rows = j.value("rows", 128);
    c.cols = j.value("cols", 128);
    c.frames = j.value("frames", 1);
    c.bits = j.value("bits", 16);
    c.samples = j.value("samples", 1);
    c.with_pixels = j.value("with_pixels", true);
    c.include_conversion_type = j.value("include_conversion_type", false);
    c.conversion_type = j.value("conversion_type", "");
    c.burned_in = j.value("burned_in", "");
    c.implicit_vr = j.value("implicit_vr", false);
    c.force_transfer_syntax = j.value("force_transfer_syntax", "");
    if (j.contains("markers")) c.markers = rects_from_json(j.at("markers"));
    std::string expect = j.value("expected", "anonymized");
    if (expect == "filtered") c.expected = Expect::Filtered;
    else if (expect == "scrubbed+anonymized" || expect == "scrubbed") c.expected = Expect::Scrubbed;
    else if (expect == "error") c.expected = Expect::Error;
    else c.expected = Expect::Anonymized;
    c.expected_reason = j.value("expected_reason", "");
    if (j.contains("expected_rects")) c.expected_rects = rects_from_json(j.at("expected_rects"));
    return c;
}

}  // namespace

std::string CorpusSpec::to_json() const {
    json arr = json::array();
    for (const auto& c : classes) arr.push_back(class_to_json(c));
    return json{{"seed", seed}, {"classes", arr}}.dump(2);
}

CorpusSpec CorpusSpec::from_json(const std::string& text) {
    json j = json::parse(text);
    CorpusSpec spec;
    spec.seed = j.value("seed", std::uint64_t{1});
    for (const auto& c : j.at("classes")) spec.classes.push_back(class_from_json(c));
    return spec;
}

GeneratedCorpus generate_corpus(const CorpusSpec& spec, const fs::path& out_dir) {
    for (const auto& c : spec.classes) {
        if (c.count < 0 || c.rows <= 0 || c.cols <= 0 || c.frames <= 0 ||
            c.instances_per_accession <= 0) {
            throw InvalidSpec("bad counts in class " + c.label);
        }
        if (c.bits != 8 && c.bits != 16) throw InvalidSpec("bits must be 8 or 16 in " + c.label);
        if (c.samples != 1 && c.samples != 3) {
            throw InvalidSpec("samples must be 1 or 3 in " + c.label);
        }
        for (const auto& m : c.markers) {
            if (m.x < 0 || m.y < 0 || m.w < 0 || m.h < 0 || m.x + m.w > c.cols ||
                m.y + m.h > c.rows) {
                throw InvalidSpec("marker " + m.str() + " outside image in " + c.label);
            }
        }
    }

    GeneratedCorpus result;
    result.root = out_dir / "instances";
    result.ledger_file = out_dir / "ledger.ndjson";
    fs::create_directories(result.root);

    std::mt19937_64 rng(spec.seed);
    std::uint64_t accession_seq = 0;
    std::uint64_t uid_seq = 0;
    std::uint64_t phi_seq = 0;

    std::ofstream ledger_out(result.ledger_file, std::ios::trunc);
    ledger_out << kLedgerHeader << "\n";

    for (const auto& cls : spec.classes) {
        int remaining = cls.count;
        while (remaining > 0) {
            int in_this_accession = std::min(remaining, cls.instances_per_accession);
            remaining -= in_this_accession;

            ++accession_seq;
            std::string accession = "ACC" + zero_pad(accession_seq, 6);
            std::string mrn = "PAT" + zero_pad((accession_seq + 1) / 2, 6);

            int year = 2008 + static_cast<int>(rng() % 12);
            int month = 1 + static_cast<int>(rng() % 12);
            int day = 1 + static_cast<int>(rng() % 28);
            char date_buf[9];
            std::snprintf(date_buf, sizeof(date_buf), "%04d%02d%02d", year, month, day);
            std::string study_date(date_buf);

            std::string study_uid = "2.25." + std::to_string(rng() % 1000000000000ULL) + "." +
                                    std::to_string(++uid_seq);
            std::string series_uid = "2.25." + std::to_string(rng() % 1000000000000ULL) + "." +
                                     std::to_string(++uid_seq);

            write_file_bytes(result.root / accession / ".mrn",
                             std::vector<std::uint8_t>(mrn.begin(), mrn.end()));

            for (int i = 0; i < in_this_accession; ++i) {
                ++phi_seq;
                std::string sop_uid = "2.25." + std::to_string(rng() % 1000000000000ULL) + "." +
                                      std::to_string(++uid_seq);
                std::string phi_id = zero_pad(phi_seq, 6);

                SyntheticInstance inst;
                inst.set_string(dicom::tags::kSopClassUid, "UI", cls.sop_class);
                inst.set_string(dicom::tags::kSopInstanceUid, "UI", sop_uid);
                inst.set_string(dicom::tags::kImageType, "CS", cls.image_type);
                inst.set_string(dicom::tags::kStudyDate, "DA", study_date);
                inst.set_string(dicom::tags::kSeriesDate, "DA", study_date);
                inst.set_string(dicom::tags::kContentDate, "DA", study_date);
                inst.set_string(dicom::tags::kStudyTime, "TM", "101500");
                inst.set_string(dicom::tags::kAccessionNumber, "SH", accession);
                inst.set_string(dicom::tags::kModality, "CS", cls.modality);
                inst.set_string(dicom::tags::kManufacturer, "LO", cls.make);
                inst.set_string(dicom::tags::kInstitutionName, "LO", "PHI-INST-" + phi_id);
                inst.set_string(dicom::tags::kReferringPhysicianName, "PN", "PHI-PHYS-" + phi_id);
                inst.set_string(dicom::tags::kStudyDescription, "LO", "PHI-DESC-" + phi_id);
                inst.set_string(dicom::tags::kManufacturerModelName, "LO", cls.model);
                inst.set_string(dicom::tags::kPatientName, "PN", "PHI-NAME-" + phi_id);
                inst.set_string(dicom::tags::kPatientId, "LO", mrn);
                inst.set_string(dicom::tags::kPatientBirthDate, "DA", "19600101");
                inst.set_string(dicom::tags::kPatientSex, "CS", "O");
                inst.set_string(dicom::tags::kStudyInstanceUid, "UI", study_uid);
                inst.set_string(dicom::tags::kSeriesInstanceUid, "UI", series_uid);
                inst.set_string(dicom::tags::kSeriesNumber, "IS", "1");
                inst.set_string(dicom::tags::kInstanceNumber, "IS", std::to_string(i + 1));
                inst.set_string(dicom::Tag{0x0009, 0x0010}, "LO", "PHI-PRIV-" + phi_id);
                if (cls.include_conversion_type) {
                    inst.set_string(dicom::tags::kConversionType, "CS", cls.conversion_type);
                }
                if (!cls.burned_in.empty()) {
                    inst.set_string(dicom::tags::kBurnedInAnnotation, "CS", cls.burned_in);
                }
                if (cls.with_pixels) {
                    inst.set_pixels(cls.rows, cls.cols, cls.bits, cls.samples, cls.frames, 0x21,
                                    cls.markers);
                }

                std::string filename = zero_pad(i + 1, 3) + ".dcm";
                auto bytes = inst.encode(cls.implicit_vr, cls.force_transfer_syntax);
                write_file_bytes(result.root / accession / filename, bytes);

                LedgerEntry entry;
                entry.path = accession + "/" + filename;
                entry.class_label = cls.label;
                entry.accession = accession;
                entry.mrn = mrn;
                entry.sop_uid = sop_uid;
                entry.study_date = study_date;
                entry.phi_strings = {"PHI-NAME-" + phi_id, "PHI-DESC-" + phi_id,
                                     "PHI-INST-" + phi_id, "PHI-PHYS-" + phi_id,
                                     "PHI-PRIV-" + phi_id};
                entry.markers = cls.markers;
                entry.expected_outcome = std::string(expect_name(cls.expected));
                entry.expected_reason = cls.expected_reason;
                entry.expected_rects = cls.expected_rects;
                ledger_out << entry.to_json() << "\n";
                result.ledger.push_back(std::move(entry));
            }
        }
    }
    ledger_out.flush();
    if (!ledger_out) throw Error("cannot write ledger");
    return result;
}

std::vector<LedgerEntry> read_ledger(const fs::path& ledger_file) {
    std::ifstream in(ledger_file);
    if (!in) throw Error("cannot read ledger: " + ledger_file.string());
    std::vector<LedgerEntry> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;
        }
        out.push_back(LedgerEntry::from_json(line));
    }
    return out;
}

CorpusSpec default_corpus_spec(int total, std::uint64_t seed) {
    if (total < 20) total = 20;
    CorpusSpec spec;
    spec.seed = seed;

    auto add = [&spec](InstanceClass c) { spec.classes.push_back(std::move(c)); };
    int used = 0;
    auto share = [&](double frac) {
        int n = std::max(1, static_cast<int>(total * frac));
        used += n;
        return n;
    };

    {
        InstanceClass c;
        c.label = "pt-scrub-ge-discovery";
        c.count = share(0.08);
        c.instances_per_accession = 2;
        c.modality = "PT";
        c.make = "GE";
        c.model = "Discovery";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.128";
        c.rows = 512;
        c.cols = 512;
        c.markers = {{256, 0, 256, 22}, {300, 22, 212, 80}, {10, 478, 100, 10}};
        c.expected = Expect::Scrubbed;
        c.expected_rects = c.markers;
        add(c);
    }
    {
        InstanceClass c;
        c.label = "us-matched-logiqe9";
        c.count = share(0.05);
        c.modality = "US";
        c.make = "GE";
        c.model = "LOGIQE9";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.6.1";
        c.rows = 480;
        c.cols = 640;
        c.bits = 8;
        c.markers = {{0, 0, 640, 48}};
        c.expected = Expect::Scrubbed;
        c.expected_rects = {{0, 0, 640, 48}, {0, 432, 200, 48}};
        add(c);
    }
    {
        InstanceClass c;
        c.label = "us-matched-epiq7";
        c.count = share(0.04);
        c.modality = "US";
        c.make = "Philips";
        c.model = "EPIQ 7";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.6.1";
        c.rows = 600;
        c.cols = 800;
        c.bits = 8;
        c.samples = 3;
        c.markers = {{0, 0, 800, 56}};
        c.expected = Expect::Scrubbed;
        c.expected_rects = {{0, 0, 800, 56}, {640, 544, 160, 56}};
        add(c);
    }
    {
        InstanceClass c;
        c.label = "us-unmatched";
        c.count = share(0.07);
        c.modality = "US";
        c.make = "NoNameUltrasound";
        c.model = "X-1";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.6.1";
        c.rows = 480;
        c.cols = 640;
        c.bits = 8;
        c.expected = Expect::Filtered;
        c.expected_reason = "no scrub whitelist rule";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "vidar-film";
        c.count = share(0.04);
        c.modality = "CR";
        c.make = "Vidar";
        c.model = "FilmDigitizer";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.7";
        c.expected = Expect::Filtered;
        c.expected_reason = "digitized analog film";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "encapsulated-pdf";
        c.count = share(0.03);
        c.modality = "OT";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.104.1";
        c.with_pixels = false;
        c.expected = Expect::Filtered;
        c.expected_reason = "encapsulated pdf";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "structured-report";
        c.count = share(0.03);
        c.modality = "SR";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.88.11";
        c.with_pixels = false;
        c.expected = Expect::Filtered;
        c.expected_reason = "structured report";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "presentation-state";
        c.count = share(0.02);
        c.modality = "PR";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.11.1";
        c.with_pixels = false;
        c.expected = Expect::Filtered;
        c.expected_reason = "presentation state";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "raw-modality";
        c.count = share(0.02);
        c.modality = "RAW";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.66";
        c.with_pixels = false;
        c.expected = Expect::Filtered;
        c.expected_reason = "raw data object";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "secondary-capture";
        c.count = share(0.03);
        c.modality = "OT";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.7";
        c.expected = Expect::Filtered;
        c.expected_reason = "secondary capture";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "burned-in-yes";
        c.count = share(0.03);
        c.burned_in = "YES";
        c.expected = Expect::Filtered;
        c.expected_reason = "burned-in annotation";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "empty-conversion-type";
        c.count = share(0.02);
        c.include_conversion_type = true;
        c.conversion_type = "";
        c.expected = Expect::Filtered;
        c.expected_reason = "empty conversion type";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "derived-secondary";
        c.count = share(0.03);
        c.image_type = "DERIVED\\SECONDARY";
        c.expected = Expect::Filtered;
        c.expected_reason = "derived image";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "video-capture";
        c.count = share(0.02);
        c.modality = "ES";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.77.1.1.1";
        c.bits = 8;
        c.samples = 3;
        c.expected = Expect::Filtered;
        c.expected_reason = "video capture device";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "bypass-secondary-capture";
        c.count = share(0.02);
        c.modality = "OT";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.7";
        c.model = "Discovery 690";
        c.expected = Expect::Anonymized;
        add(c);
    }
    {
        InstanceClass c;
        c.label = "bypass-burned-in";
        c.count = share(0.02);
        c.burned_in = "YES";
        c.model = "Discovery 690";
        c.expected = Expect::Anonymized;
        add(c);
    }
    {
        InstanceClass c;
        c.label = "bypass-derived-pet";
        c.count = share(0.02);
        c.modality = "PT";
        c.image_type = "DERIVED\\SECONDARY";
        c.sop_class = "1.2.840.10008.5.1.4.1.1.128";
        c.expected = Expect::Anonymized;
        add(c);
    }
    {
        InstanceClass c;
        c.label = "ct-implicit-vr";
        c.count = share(0.05);
        c.implicit_vr = true;
        c.make = "ImpliCorp";
        c.expected = Expect::Anonymized;
        add(c);
    }
    {
        InstanceClass c;
        c.label = "jpeg-lossless-syntax";
        c.count = share(0.02);
        c.force_transfer_syntax = "1.2.840.10008.1.2.4.70";
        c.expected = Expect::Error;
        c.expected_reason = "unsupported transfer syntax";
        add(c);
    }
    {
        InstanceClass c;
        c.label = "ct-plain";
        c.count = std::max(1, total - used);
        c.instances_per_accession = 2;
        c.modality = "CT";
        c.rows = 256;
        c.cols = 256;
        c.expected = Expect::Anonymized;
        add(c);
    }
    return spec;
}

fs::path write_regression_fixtures(const fs::path& dir, std::uint64_t seed) {
    fs::create_directories(dir);
    write_text(dir / "default-filter.script", rules::defaults::kFilterScript);
    write_text(dir / "default-scrubber.script", rules::defaults::kScrubScript);
    write_text(dir / "default-anonymizer.script", rules::defaults::kAnonScript);
    fs::path suite = dir / "pet-ct-regression.feature";
    write_text(suite, kRegressionSuite);

    std::mt19937_64 rng(seed);
    std::uint64_t uid_seq = 0;
    auto next_uid = [&] {
        return "2.25." + std::to_string(rng() % 1000000000000ULL) + "." + std::to_string(++uid_seq);
    };

    auto base_instance = [&](const std::string& modality, const std::string& make,
                             const std::string& model, const std::string& sop_class, int index) {
        SyntheticInstance inst;
        inst.set_string(dicom::tags::kSopClassUid, "UI", sop_class);
        inst.set_string(dicom::tags::kSopInstanceUid, "UI", next_uid());
        inst.set_string(dicom::tags::kImageType, "CS", "ORIGINAL\\PRIMARY");
        inst.set_string(dicom::tags::kStudyDate, "DA", "20100310");
        inst.set_string(dicom::tags::kSeriesDate, "DA", "20100310");
        inst.set_string(dicom::tags::kContentDate, "DA", "20100311");
        inst.set_string(dicom::tags::kAccessionNumber, "SH", "RA" + zero_pad(index, 4));
        inst.set_string(dicom::tags::kModality, "CS", modality);
        inst.set_string(dicom::tags::kManufacturer, "LO", make);
        inst.set_string(dicom::tags::kManufacturerModelName, "LO", model);
        inst.set_string(dicom::tags::kPatientName, "PN", "PHI-NAME-" + zero_pad(index, 4));
        inst.set_string(dicom::tags::kPatientId, "LO", "RP" + zero_pad(index, 4));
        inst.set_string(dicom::tags::kStudyInstanceUid, "UI", next_uid());
        inst.set_string(dicom::tags::kSeriesInstanceUid, "UI", next_uid());
        return inst;
    };

    for (int i = 0; i < 4; ++i) {
        auto inst = base_instance("PT", "GE", "Discovery IQ", "1.2.840.10008.5.1.4.1.1.128", i);
        inst.set_pixels(128, 128, 16, 1, 1, 0x21, {});
        write_file_bytes(dir / "dicom-phi/PT/Anonymize" / (zero_pad(i + 1, 3) + ".dcm"),
                         inst.encode());
    }

    const std::vector<dicom::Rect> pct_rects = {{256, 0, 256, 22}, {300, 22, 212, 80},
                                                {10, 478, 100, 10}};
    for (int i = 0; i < 3; ++i) {
        auto inst = base_instance("PT", "GE", "Discovery", "1.2.840.10008.5.1.4.1.1.128", 10 + i);
        inst.set_pixels(512, 512, 16, 1, 1, 0x21, pct_rects);
        write_file_bytes(
            dir / "dicom-phi/PT/Scrub/GE/Discovery/512x512" / (zero_pad(i + 1, 3) + ".dcm"),
            inst.encode());
    }

    {
        auto inst = base_instance("PT", "Vidar", "FilmDigitizer", "1.2.840.10008.5.1.4.1.1.7", 20);
        inst.set_pixels(128, 128, 8, 1, 1, 0x21, {});
        write_file_bytes(dir / "dicom-phi/PT/Filter" / "001.dcm", inst.encode());
    }
    {
        auto inst = base_instance("PT", "GE", "Discovery IQ", "1.2.840.10008.5.1.4.1.1.2", 21);
        inst.set_string(dicom::tags::kImageType, "CS", "DERIVED\\SECONDARY");
        inst.set_pixels(128, 128, 16, 1, 1, 0x21, {});
        write_file_bytes(dir / "dicom-phi/PT/Filter" / "002.dcm", inst.encode());
    }
    {
        auto inst = base_instance("PT", "GE", "Discovery IQ", "1.2.840.10008.5.1.4.1.1.104.1", 22);
        write_file_bytes(dir / "dicom-phi/PT/Filter" / "003.dcm", inst.encode());
    }
    return suite;
}

}  // namespace deid::corpus
