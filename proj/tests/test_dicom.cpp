#include "deid/corpus/generator.hpp"
#include "deid/dicom/dictionary.hpp"
#include "deid/dicom/file_format.hpp"
#include "deid/dicom/pixels.hpp"

#include <doctest.h>

#include <numeric>

using namespace deid;

namespace {

// Synthetic instances come from the corpus emitter, which serializes
// independently of dicom::write_file; parsing them exercises both sides.
corpus::SyntheticInstance basic_instance(int rows = 16, int cols = 16, int bits = 16,
                                         int samples = 1, int frames = 1) {
    corpus::SyntheticInstance inst;
    inst.set_string(dicom::tags::kSopClassUid, "UI", "1.2.840.10008.5.1.4.1.1.2");
    inst.set_string(dicom::tags::kSopInstanceUid, "UI", "2.25.4242.1");
    inst.set_string(dicom::tags::kModality, "CS", "CT");
    inst.set_string(dicom::tags::kManufacturer, "LO", "SynthWorks");
    inst.set_string(dicom::tags::kPatientName, "PN", "PHI-NAME-000001");
    inst.set_string(dicom::tags::kStudyDate, "DA", "20100310");
    inst.set_pixels(rows, cols, bits, samples, frames, 0x01, {});
    return inst;
}

std::uint64_t zero_samples(const dicom::PixelMatrix& px) {
    std::uint64_t zeros = 0;
    std::size_t bps = px.bytes_per_sample();
    for (const auto& frame : px.frames) {
        for (std::size_t i = 0; i + bps <= frame.size(); i += bps) {
            bool zero = true;
            for (std::size_t b = 0; b < bps; ++b) {
                if (frame[i + b] != 0) zero = false;
            }
            if (zero) ++zeros;
        }
    }
    return zeros;
}

}  // namespace

TEST_CASE("tag ordering, privacy and rendering") {
    dicom::Tag a{0x0008, 0x0070};
    dicom::Tag b{0x0008, 0x1090};
    dicom::Tag c{0x0010, 0x0010};
    CHECK(a < b);
    CHECK(b < c);
    CHECK(a.str() == "(0008,0070)");
    CHECK_FALSE(a.is_private());
    CHECK(dicom::Tag{0x0009, 0x0010}.is_private());

    auto parsed = dicom::Tag::parse("(7FE0,0010)");
    REQUIRE(parsed.has_value());
    CHECK(*parsed == dicom::tags::kPixelData);
    CHECK(dicom::Tag::parse("0008,0070").has_value());
    CHECK_FALSE(dicom::Tag::parse("(00080070)").has_value());
    CHECK_FALSE(dicom::Tag::parse("(zzzz,0010)").has_value());
}

TEST_CASE("attribute alias table resolves the documented names") {
    CHECK(dicom::tag_for_alias("Manufacturer") == dicom::tags::kManufacturer);
    CHECK(dicom::tag_for_alias("ImageType") == dicom::tags::kImageType);
    CHECK(dicom::tag_for_alias("ConversionType") == dicom::tags::kConversionType);
    CHECK(dicom::tag_for_alias("BurnedInAnnotation") == dicom::tags::kBurnedInAnnotation);
    CHECK(dicom::tag_for_alias("SOPClassUID") == dicom::tags::kSopClassUid);
    CHECK(dicom::tag_for_alias("Modality") == dicom::tags::kModality);
    CHECK(dicom::tag_for_alias("ManufacturerModelName") == dicom::tags::kManufacturerModelName);
    CHECK_FALSE(dicom::tag_for_alias("NotAnAttribute").has_value());
}

TEST_CASE("parse exposes values written by the independent emitter") {
    auto inst = basic_instance();
    inst.set_string(dicom::tags::kManufacturer, "LO", "Vidar");
    auto bytes = inst.encode();

    auto ds = dicom::parse_file(bytes);
    CHECK(ds.string_value(dicom::tags::kManufacturer) == "Vidar");
    CHECK(ds.string_value(dicom::tags::kModality) == "CT");
    CHECK(ds.transfer_syntax() == dicom::uids::kExplicitVrLittleEndian);
    CHECK(ds.int_value(dicom::tags::kRows) == 16);

    // File meta never leaks into the dataset.
    CHECK_FALSE(ds.contains(dicom::tags::kTransferSyntaxUid));
}

TEST_CASE("malformed inputs are rejected") {
    CHECK_THROWS_AS(dicom::parse_file({}), dicom::MalformedFile);

    std::vector<std::uint8_t> garbage(200, 0x55);
    CHECK_THROWS_AS(dicom::parse_file(garbage), dicom::MalformedFile);

    auto good = basic_instance().encode();
    auto truncated = std::vector<std::uint8_t>(good.begin(), good.begin() + good.size() / 2);
    CHECK_THROWS_AS(dicom::parse_file(truncated), dicom::MalformedFile);
}

TEST_CASE("odd value length is malformed, not auto-padded") {
    auto bytes = basic_instance().encode();
    // Patch Manufacturer "SynthWorks" (even) down to 9 bytes by editing the
    // 16-bit length field that precedes the value.
    std::string needle = "SynthWorks";
    auto it = std::search(bytes.begin(), bytes.end(), needle.begin(), needle.end());
    REQUIRE(it != bytes.end());
    auto len_pos = std::distance(bytes.begin(), it) - 2;
    bytes[static_cast<std::size_t>(len_pos)] = 9;
    bytes.erase(it + 9);  // keep the stream aligned after shortening
    CHECK_THROWS_AS(dicom::parse_file(bytes), dicom::MalformedFile);
}

TEST_CASE("unsupported transfer syntaxes are refused loudly") {
    auto inst = basic_instance();
    auto bytes = inst.encode(false, "1.2.840.10008.1.2.4.70");  // JPEG Lossless
    CHECK_THROWS_AS(dicom::parse_file(bytes), dicom::UnsupportedTransferSyntax);

    auto big_endian = inst.encode(false, "1.2.840.10008.1.2.2");
    CHECK_THROWS_AS(dicom::parse_file(big_endian), dicom::UnsupportedTransferSyntax);
}

TEST_CASE("round-trip through write_file is exact for emitter variants") {
    auto check_roundtrip = [](const corpus::SyntheticInstance& inst, bool implicit) {
        auto bytes = inst.encode(implicit);
        auto ds = dicom::parse_file(bytes);
        auto rewritten = dicom::write_file(ds);
        auto ds2 = dicom::parse_file(rewritten);
        CHECK(ds2 == ds);
        CHECK(ds2.transfer_syntax() == dicom::uids::kExplicitVrLittleEndian);
        // Serialization is deterministic.
        CHECK(dicom::write_file(ds) == rewritten);
    };

    check_roundtrip(basic_instance(), false);
    check_roundtrip(basic_instance(), true);  // implicit VR input
    check_roundtrip(basic_instance(32, 16, 8, 1, 1), false);
    check_roundtrip(basic_instance(16, 16, 8, 3, 1), false);
    check_roundtrip(basic_instance(16, 16, 16, 1, 3), false);

    auto with_private = basic_instance();
    with_private.set_string(dicom::Tag{0x0009, 0x0010}, "LO", "PHI-PRIV-000001");
    check_roundtrip(with_private, false);
    check_roundtrip(with_private, true);
}

TEST_CASE("empty dataset writes and parses back to empty") {
    dicom::DataSet empty;
    auto bytes = dicom::write_file(empty);
    auto ds = dicom::parse_file(bytes);
    CHECK(ds.empty());
    CHECK(ds == empty);
}

TEST_CASE("decode_pixels validates dimensions against the buffer") {
    auto inst = basic_instance(512, 512, 16, 1, 1);
    auto ds = dicom::parse_file(inst.encode());
    auto px = dicom::decode_pixels(ds);
    CHECK(px.rows == 512);
    CHECK(px.cols == 512);
    CHECK(px.frames.size() == 1);
    CHECK(px.frame_size() == 524288);
    CHECK(px.frames[0].size() == 524288);

    SUBCASE("buffer mismatch") {
        dicom::DataSet broken = ds;
        broken.set(dicom::Element::of_bytes(dicom::tags::kPixelData, dicom::vr::OW,
                                            std::vector<std::uint8_t>(10, 0)));
        CHECK_THROWS_AS(dicom::decode_pixels(broken), dicom::InconsistentDimensions);
    }
    SUBCASE("missing pixel data") {
        dicom::DataSet broken = ds;
        broken.remove(dicom::tags::kPixelData);
        CHECK_THROWS_AS(dicom::decode_pixels(broken), dicom::MissingPixelData);
    }
    SUBCASE("unsupported bit depth") {
        dicom::DataSet broken = ds;
        broken.set(dicom::Element::of_u16(dicom::tags::kBitsAllocated, 12));
        CHECK_THROWS_AS(dicom::decode_pixels(broken), dicom::UnsupportedEncoding);
    }
}

TEST_CASE("multi-frame decode keeps frames independently addressable") {
    corpus::SyntheticInstance inst = basic_instance(16, 16, 16, 1, 3);
    auto ds = dicom::parse_file(inst.encode());
    auto px = dicom::decode_pixels(ds);
    REQUIRE(px.frames.size() == 3);
    for (const auto& frame : px.frames) {
        CHECK(frame.size() == px.frame_size());
        CHECK(std::all_of(frame.begin(), frame.end(), [](std::uint8_t b) { return b == 0x01; }));
    }
    px.frames[1][0] = 0xFF;
    CHECK(px.frames[0][0] == 0x01);
    CHECK(px.frames[2][0] == 0x01);
}

TEST_CASE("blank_region zeroes exactly the rectangle") {
    dicom::PixelMatrix px;
    px.rows = 512;
    px.cols = 512;
    px.bits_allocated = 16;
    px.samples_per_pixel = 1;
    px.frames.emplace_back(px.frame_size(), 0x01);

    auto blanked = dicom::blank_region(px, {256, 0, 256, 22});
    CHECK(zero_samples(blanked) == 256 * 22);

    // Complement untouched: total byte sum drops by exactly the blanked bytes.
    auto total = [](const dicom::PixelMatrix& m) {
        std::uint64_t sum = 0;
        for (const auto& f : m.frames) sum += std::accumulate(f.begin(), f.end(), std::uint64_t{0});
        return sum;
    };
    CHECK(total(px) - total(blanked) == 256ull * 22 * 2 * 0x01);

    SUBCASE("idempotent") {
        auto twice = dicom::blank_region(blanked, {256, 0, 256, 22});
        CHECK(twice == blanked);
    }
    SUBCASE("full cover") {
        auto all = dicom::blank_region(px, {0, 0, 512, 512});
        CHECK(zero_samples(all) == 512ull * 512);
    }
    SUBCASE("empty rect is the identity") {
        auto same = dicom::blank_region(px, {0, 0, 0, 0});
        CHECK(same == px);
    }
    SUBCASE("out of bounds") {
        CHECK_THROWS_AS(dicom::blank_region(px, {500, 0, 20, 10}), dicom::RectOutOfBounds);
        CHECK_THROWS_AS(dicom::blank_region(px, {-1, 0, 5, 5}), dicom::RectOutOfBounds);
    }
}

TEST_CASE("blank_region applies to every frame and survives re-encoding") {
    auto inst = basic_instance(64, 64, 16, 1, 2);
    auto ds = dicom::parse_file(inst.encode());
    auto px = dicom::decode_pixels(ds);
    px = dicom::blank_region(std::move(px), {0, 0, 64, 8});

    auto ds2 = dicom::with_pixels(ds, px);
    auto reparsed = dicom::parse_file(dicom::write_file(ds2));
    auto px2 = dicom::decode_pixels(reparsed);
    REQUIRE(px2.frames.size() == 2);
    for (const auto& frame : px2.frames) {
        for (std::size_t i = 0; i < 64 * 8 * 2; ++i) CHECK(frame[i] == 0);
        CHECK(frame[64 * 8 * 2] == 0x01);
    }
}
