#pragma once

#include "deid/dicom/pixels.hpp"
#include "deid/dicom/tag.hpp"
#include "deid/error.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace deid::corpus {

struct InvalidSpec : Error {
    using Error::Error;
};

/// Expected pipeline outcome for instances of a class, under the default
/// rule set the ledger names.
enum class Expect { Filtered, Anonymized, Scrubbed, Error };

std::string_view expect_name(Expect e);

/// One family of synthetic instances sharing modality, device, geometry,
/// and expected outcome.
struct InstanceClass {
    std::string label;
    int count = 1;
    int instances_per_accession = 1;

    std::string modality = "CT";
    std::string make = "SynthWorks";
    std::string model = "Unit1";
    std::string sop_class = "1.2.840.10008.5.1.4.1.1.2";
    std::string image_type = "ORIGINAL\\PRIMARY\\AXIAL";

    int rows = 128;
    int cols = 128;
    int frames = 1;
    int bits = 16;
    int samples = 1;
    bool with_pixels = true;

    /// Empty string still writes the element (zero length) when set.
    bool include_conversion_type = false;
    std::string conversion_type;
    std::string burned_in;  // "YES" writes BurnedInAnnotation

    /// Written as Implicit VR Little Endian when set.
    bool implicit_vr = false;
    /// Overrides the meta transfer syntax verbatim (for unsupported-syntax
    /// fixtures).
    std::string force_transfer_syntax;

    /// Nonzero pixel blocks planted as burned-in PHI surrogates.
    std::vector<dicom::Rect> markers;

    Expect expected = Expect::Anonymized;
    std::string expected_reason;
    std::vector<dicom::Rect> expected_rects;
};

struct CorpusSpec {
    std::uint64_t seed = 1;
    std::vector<InstanceClass> classes;

    static CorpusSpec from_json(const std::string& text);
    std::string to_json() const;
};

/// Ground truth for one generated instance: everything the PHI oracle
/// needs to verify the pipeline's work.
struct LedgerEntry {
    std::string path;  // relative to the corpus instance root
    std::string class_label;
    std::string accession;
    std::string mrn;
    std::string sop_uid;
    std::string study_date;
    std::vector<std::string> phi_strings;
    std::vector<dicom::Rect> markers;
    std::string expected_outcome;
    std::string expected_reason;
    std::vector<dicom::Rect> expected_rects;

    std::string to_json() const;
    static LedgerEntry from_json(const std::string& text);
};

struct GeneratedCorpus {
    std::filesystem::path root;           // <out>/instances
    std::filesystem::path ledger_file;    // <out>/ledger.ndjson
    std::vector<LedgerEntry> ledger;
};

/// Writes Part-10 files plus the ground-truth ledger. The emitter here is
/// intentionally separate from dicom::write_file so parser and corpus
/// serializations check each other.
GeneratedCorpus generate_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir);

std::vector<LedgerEntry> read_ledger(const std::filesystem::path& ledger_file);

/// Mixed corpus exercising the whole default rule catalog; instance count
/// approximates `total`.
CorpusSpec default_corpus_spec(int total, std::uint64_t seed);

/// Writes the PET/CT regression tree: suite file, the three default rule
/// scripts, and fixture directories for the anonymize/scrub/filter
/// scenarios. Returns the suite file path.
std::filesystem::path write_regression_fixtures(const std::filesystem::path& dir,
                                                std::uint64_t seed);

/// Low-level synthetic instance builder with its own Part-10 byte
/// emitter, independent of dicom::write_file.
class SyntheticInstance {
public:
    void set_string(dicom::Tag tag, const char vr[2], std::string_view value);
    void set_u16(dicom::Tag tag, std::uint16_t value);
    void set_pixels(int rows, int cols, int bits, int samples, int frames,
                    std::uint8_t fill, const std::vector<dicom::Rect>& markers);

    /// Part-10 encoding; implicit_vr switches the dataset body only.
    /// transfer_syntax_override forces the meta TransferSyntaxUID.
    std::vector<std::uint8_t> encode(bool implicit_vr = false,
                                     std::string_view transfer_syntax_override = {}) const;

private:
    struct Raw {
        char vr[2];
        std::vector<std::uint8_t> bytes;
    };
    std::map<dicom::Tag, Raw> elements_;
};

}  // namespace deid::corpus
