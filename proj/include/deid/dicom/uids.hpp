#pragma once

#include <string_view>

namespace deid::dicom::uids {

// Transfer syntaxes
inline constexpr std::string_view kImplicitVrLittleEndian = "1.2.840.10008.1.2";
inline constexpr std::string_view kExplicitVrLittleEndian = "1.2.840.10008.1.2.1";
inline constexpr std::string_view kExplicitVrBigEndian = "1.2.840.10008.1.2.2";
inline constexpr std::string_view kJpegLossless = "1.2.840.10008.1.2.4.70";

// SOP classes named by the default rule set and the test corpora
inline constexpr std::string_view kCtImageStorage = "1.2.840.10008.5.1.4.1.1.2";
inline constexpr std::string_view kUsImageStorage = "1.2.840.10008.5.1.4.1.1.6.1";
inline constexpr std::string_view kSecondaryCaptureStorage = "1.2.840.10008.5.1.4.1.1.7";
inline constexpr std::string_view kGrayscalePresentationState = "1.2.840.10008.5.1.4.1.1.11.1";
inline constexpr std::string_view kXRayAngioStorage = "1.2.840.10008.5.1.4.1.1.12.1";
inline constexpr std::string_view kDigitalXRayStorage = "1.2.840.10008.5.1.4.1.1.1.1";
inline constexpr std::string_view kVideoEndoscopicStorage = "1.2.840.10008.5.1.4.1.1.77.1.1.1";
inline constexpr std::string_view kBasicTextSrStorage = "1.2.840.10008.5.1.4.1.1.88.11";
inline constexpr std::string_view kEnhancedSrStorage = "1.2.840.10008.5.1.4.1.1.88.22";
inline constexpr std::string_view kEncapsulatedPdfStorage = "1.2.840.10008.5.1.4.1.1.104.1";
inline constexpr std::string_view kPetImageStorage = "1.2.840.10008.5.1.4.1.1.128";
inline constexpr std::string_view kRawDataStorage = "1.2.840.10008.5.1.4.1.1.66";

}  // namespace deid::dicom::uids
