#include "deid/dicom/dictionary.hpp"

#include "deid/util/text.hpp"

#include <array>

namespace deid::dicom {

namespace {

struct DictEntry {
    Tag tag;
    Vr vr;
    std::string_view name;
};

// Tags the rule grammars, the default scripts, and the tests touch.
// Everything else parses as UN and is addressed numerically.
constexpr std::array kDictionary{
    DictEntry{tags::kFileMetaGroupLength, vr::UL, "FileMetaInformationGroupLength"},
    DictEntry{tags::kFileMetaVersion, vr::OB, "FileMetaInformationVersion"},
    DictEntry{tags::kMediaStorageSopClassUid, vr::UI, "MediaStorageSOPClassUID"},
    DictEntry{tags::kMediaStorageSopInstanceUid, vr::UI, "MediaStorageSOPInstanceUID"},
    DictEntry{tags::kTransferSyntaxUid, vr::UI, "TransferSyntaxUID"},
    DictEntry{tags::kImplementationClassUid, vr::UI, "ImplementationClassUID"},
    DictEntry{tags::kImplementationVersionName, vr::SH, "ImplementationVersionName"},

    DictEntry{tags::kImageType, vr::CS, "ImageType"},
    DictEntry{tags::kSopClassUid, vr::UI, "SOPClassUID"},
    DictEntry{tags::kSopInstanceUid, vr::UI, "SOPInstanceUID"},
    DictEntry{tags::kStudyDate, vr::DA, "StudyDate"},
    DictEntry{tags::kSeriesDate, vr::DA, "SeriesDate"},
    DictEntry{tags::kAcquisitionDate, vr::DA, "AcquisitionDate"},
    DictEntry{tags::kContentDate, vr::DA, "ContentDate"},
    DictEntry{tags::kAcquisitionDateTime, vr::DT, "AcquisitionDateTime"},
    DictEntry{tags::kStudyTime, vr::TM, "StudyTime"},
    DictEntry{tags::kAccessionNumber, vr::SH, "AccessionNumber"},
    DictEntry{tags::kModality, vr::CS, "Modality"},
    DictEntry{tags::kConversionType, vr::CS, "ConversionType"},
    DictEntry{tags::kManufacturer, vr::LO, "Manufacturer"},
    DictEntry{tags::kInstitutionName, vr::LO, "InstitutionName"},
    DictEntry{tags::kReferringPhysicianName, vr::PN, "ReferringPhysicianName"},
    DictEntry{tags::kStationName, vr::SH, "StationName"},
    DictEntry{tags::kStudyDescription, vr::LO, "StudyDescription"},
    DictEntry{tags::kSeriesDescription, vr::LO, "SeriesDescription"},
    DictEntry{tags::kManufacturerModelName, vr::LO, "ManufacturerModelName"},

    DictEntry{tags::kPatientName, vr::PN, "PatientName"},
    DictEntry{tags::kPatientId, vr::LO, "PatientID"},
    DictEntry{tags::kPatientBirthDate, vr::DA, "PatientBirthDate"},
    DictEntry{tags::kPatientSex, vr::CS, "PatientSex"},
    DictEntry{tags::kOtherPatientIds, vr::LO, "OtherPatientIDs"},
    DictEntry{tags::kPatientComments, vr::LT, "PatientComments"},

    DictEntry{tags::kBodyPartExamined, vr::CS, "BodyPartExamined"},
    DictEntry{tags::kSliceThickness, vr::DS, "SliceThickness"},
    DictEntry{tags::kDeviceSerialNumber, vr::LO, "DeviceSerialNumber"},
    DictEntry{tags::kSoftwareVersions, vr::LO, "SoftwareVersions"},
    DictEntry{tags::kProtocolName, vr::LO, "ProtocolName"},

    DictEntry{tags::kStudyInstanceUid, vr::UI, "StudyInstanceUID"},
    DictEntry{tags::kSeriesInstanceUid, vr::UI, "SeriesInstanceUID"},
    DictEntry{tags::kStudyId, vr::SH, "StudyID"},
    DictEntry{tags::kSeriesNumber, vr::IS, "SeriesNumber"},
    DictEntry{tags::kInstanceNumber, vr::IS, "InstanceNumber"},
    DictEntry{tags::kFrameOfReferenceUid, vr::UI, "FrameOfReferenceUID"},

    DictEntry{tags::kSamplesPerPixel, vr::US, "SamplesPerPixel"},
    DictEntry{tags::kPhotometricInterpretation, vr::CS, "PhotometricInterpretation"},
    DictEntry{tags::kNumberOfFrames, vr::IS, "NumberOfFrames"},
    DictEntry{tags::kRows, vr::US, "Rows"},
    DictEntry{tags::kColumns, vr::US, "Columns"},
    DictEntry{tags::kPixelSpacing, vr::DS, "PixelSpacing"},
    DictEntry{tags::kBitsAllocated, vr::US, "BitsAllocated"},
    DictEntry{tags::kBitsStored, vr::US, "BitsStored"},
    DictEntry{tags::kHighBit, vr::US, "HighBit"},
    DictEntry{tags::kPixelRepresentation, vr::US, "PixelRepresentation"},
    DictEntry{tags::kBurnedInAnnotation, vr::CS, "BurnedInAnnotation"},
    DictEntry{tags::kWindowCenter, vr::DS, "WindowCenter"},
    DictEntry{tags::kWindowWidth, vr::DS, "WindowWidth"},
    DictEntry{tags::kRescaleIntercept, vr::DS, "RescaleIntercept"},
    DictEntry{tags::kRescaleSlope, vr::DS, "RescaleSlope"},

    DictEntry{tags::kPixelData, vr::OW, "PixelData"},
};

// The fixed alias table of the rule-script grammars.
constexpr std::array<std::pair<std::string_view, Tag>, 16> kAliases{{
    {"Manufacturer", tags::kManufacturer},
    {"ImageType", tags::kImageType},
    {"ConversionType", tags::kConversionType},
    {"BurnedInAnnotation", tags::kBurnedInAnnotation},
    {"SOPClassUID", tags::kSopClassUid},
    {"Modality", tags::kModality},
    {"ManufacturerModelName", tags::kManufacturerModelName},
    {"SOPInstanceUID", tags::kSopInstanceUid},
    {"AccessionNumber", tags::kAccessionNumber},
    {"PatientID", tags::kPatientId},
    {"PatientName", tags::kPatientName},
    {"StudyDate", tags::kStudyDate},
    {"StudyDescription", tags::kStudyDescription},
    {"SeriesDescription", tags::kSeriesDescription},
    {"Rows", tags::kRows},
    {"Columns", tags::kColumns},
}};

}  // namespace

std::string_view tag_name(Tag tag) {
    for (const auto& e : kDictionary) {
        if (e.tag == tag) return e.name;
    }
    return {};
}

std::optional<Tag> tag_for_alias(std::string_view name) {
    for (const auto& [alias, tag] : kAliases) {
        if (util::iequals(alias, name)) return tag;
    }
    return std::nullopt;
}

Vr vr_for_tag(Tag tag) {
    for (const auto& e : kDictionary) {
        if (e.tag == tag) return e.vr;
    }
    return vr::UN;
}

}  // namespace deid::dicom
