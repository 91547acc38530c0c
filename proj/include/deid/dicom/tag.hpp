#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace deid::dicom {

/// DICOM attribute identifier. Ordering is lexicographic on (group, element),
/// which is the order elements appear in an encoded dataset.
struct Tag {
    std::uint16_t group = 0;
    std::uint16_t element = 0;

    constexpr auto operator<=>(const Tag&) const = default;

    /// Private tags live in odd-numbered groups.
    constexpr bool is_private() const { return (group & 1u) != 0; }

    /// Renders as "(0008,0070)".
    std::string str() const;

    /// Accepts "(GGGG,EEEE)" or "GGGG,EEEE" with hex digits.
    static std::optional<Tag> parse(std::string_view text);
};

namespace tags {

inline constexpr Tag kFileMetaGroupLength{0x0002, 0x0000};
inline constexpr Tag kFileMetaVersion{0x0002, 0x0001};
inline constexpr Tag kMediaStorageSopClassUid{0x0002, 0x0002};
inline constexpr Tag kMediaStorageSopInstanceUid{0x0002, 0x0003};
inline constexpr Tag kTransferSyntaxUid{0x0002, 0x0010};
inline constexpr Tag kImplementationClassUid{0x0002, 0x0012};
inline constexpr Tag kImplementationVersionName{0x0002, 0x0013};

inline constexpr Tag kImageType{0x0008, 0x0008};
inline constexpr Tag kSopClassUid{0x0008, 0x0016};
inline constexpr Tag kSopInstanceUid{0x0008, 0x0018};
inline constexpr Tag kStudyDate{0x0008, 0x0020};
inline constexpr Tag kSeriesDate{0x0008, 0x0021};
inline constexpr Tag kAcquisitionDate{0x0008, 0x0022};
inline constexpr Tag kContentDate{0x0008, 0x0023};
inline constexpr Tag kAcquisitionDateTime{0x0008, 0x002A};
inline constexpr Tag kStudyTime{0x0008, 0x0030};
inline constexpr Tag kAccessionNumber{0x0008, 0x0050};
inline constexpr Tag kModality{0x0008, 0x0060};
inline constexpr Tag kConversionType{0x0008, 0x0064};
inline constexpr Tag kManufacturer{0x0008, 0x0070};
inline constexpr Tag kInstitutionName{0x0008, 0x0080};
inline constexpr Tag kReferringPhysicianName{0x0008, 0x0090};
inline constexpr Tag kStationName{0x0008, 0x1010};
inline constexpr Tag kStudyDescription{0x0008, 0x1030};
inline constexpr Tag kSeriesDescription{0x0008, 0x103E};
inline constexpr Tag kManufacturerModelName{0x0008, 0x1090};

inline constexpr Tag kPatientName{0x0010, 0x0010};
inline constexpr Tag kPatientId{0x0010, 0x0020};
inline constexpr Tag kPatientBirthDate{0x0010, 0x0030};
inline constexpr Tag kPatientSex{0x0010, 0x0040};
inline constexpr Tag kOtherPatientIds{0x0010, 0x1000};
inline constexpr Tag kPatientComments{0x0010, 0x4000};

inline constexpr Tag kBodyPartExamined{0x0018, 0x0015};
inline constexpr Tag kSliceThickness{0x0018, 0x0050};
inline constexpr Tag kDeviceSerialNumber{0x0018, 0x1000};
inline constexpr Tag kSoftwareVersions{0x0018, 0x1020};
inline constexpr Tag kProtocolName{0x0018, 0x1030};

inline constexpr Tag kStudyInstanceUid{0x0020, 0x000D};
inline constexpr Tag kSeriesInstanceUid{0x0020, 0x000E};
inline constexpr Tag kStudyId{0x0020, 0x0010};
inline constexpr Tag kSeriesNumber{0x0020, 0x0011};
inline constexpr Tag kInstanceNumber{0x0020, 0x0013};
inline constexpr Tag kFrameOfReferenceUid{0x0020, 0x0052};

inline constexpr Tag kSamplesPerPixel{0x0028, 0x0002};
inline constexpr Tag kPhotometricInterpretation{0x0028, 0x0004};
inline constexpr Tag kNumberOfFrames{0x0028, 0x0008};
inline constexpr Tag kRows{0x0028, 0x0010};
inline constexpr Tag kColumns{0x0028, 0x0011};
inline constexpr Tag kPixelSpacing{0x0028, 0x0030};
inline constexpr Tag kBitsAllocated{0x0028, 0x0100};
inline constexpr Tag kBitsStored{0x0028, 0x0101};
inline constexpr Tag kHighBit{0x0028, 0x0102};
inline constexpr Tag kPixelRepresentation{0x0028, 0x0103};
inline constexpr Tag kBurnedInAnnotation{0x0028, 0x0301};
inline constexpr Tag kWindowCenter{0x0028, 0x1050};
inline constexpr Tag kWindowWidth{0x0028, 0x1051};
inline constexpr Tag kRescaleIntercept{0x0028, 0x1052};
inline constexpr Tag kRescaleSlope{0x0028, 0x1053};

inline constexpr Tag kPixelData{0x7FE0, 0x0010};

inline constexpr Tag kItem{0xFFFE, 0xE000};
inline constexpr Tag kItemDelimitation{0xFFFE, 0xE00D};
inline constexpr Tag kSequenceDelimitation{0xFFFE, 0xE0DD};

}  // namespace tags

}  // namespace deid::dicom
