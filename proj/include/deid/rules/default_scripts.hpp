#pragma once

#include <string_view>

namespace deid::rules::defaults {

/// Shipped filter catalog. Order matters: rules that may never be
/// bypassed come first, then the whitelist accepts, then the rejects
/// those accepts may bypass.
inline constexpr std::string_view kFilterScript = R"(# Default filter catalog.
# First match wins. Rules above the accept block can never be bypassed.

reject Manufacturer equals "Vidar" reason "digitized analog film"
reject SOPClassUID equals "1.2.840.10008.5.1.4.1.1.104.1" reason "encapsulated pdf"
reject SOPClassUID matches_regex "^1\.2\.840\.10008\.5\.1\.4\.1\.1\.88\." reason "structured report"
reject Modality equals "SR" reason "structured report"
reject SOPClassUID matches_regex "^1\.2\.840\.10008\.5\.1\.4\.1\.1\.11\." reason "presentation state"
reject Modality equals "PR" reason "presentation state"
reject Modality equals "RAW" reason "raw data object"
reject ConversionType is_empty reason "empty conversion type"
reject SOPClassUID matches_regex "^1\.2\.840\.10008\.5\.1\.4\.1\.1\.77\." reason "video capture device"

# Whitelist bypasses for the rejects below, keyed on other attributes.
accept SOPClassUID equals "1.2.840.10008.5.1.4.1.1.128" reason "pet image storage"
accept ManufacturerModelName equals "Discovery 690" reason "approved pet/ct fusion device"

# Bypassable rejects.
reject SOPClassUID matches_regex "^1\.2\.840\.10008\.5\.1\.4\.1\.1\.7(\.|$)" reason "secondary capture"
reject BurnedInAnnotation equals "YES" reason "burned-in annotation"
reject ImageType contains "DERIVED" reason "derived image"
reject ImageType contains "SECONDARY" reason "secondary image"

default accept
)";

/// Shipped pixel-scrub catalog. Ultrasound is whitelist-only: a US
/// instance with no matching entry is filtered.
inline constexpr std::string_view kScrubScript = R"(# Default pixel scrub catalog.
policy whitelist US

[modality=PT make="GE" model="Discovery" rows=512 cols=512]
rect 256,0,256,22
rect 300,22,212,80
rect 10,478,100,10

[modality=US make="GE" model="LOGIQE9" rows=480 cols=640]
rect 0,0,640,48
rect 0,432,200,48

[modality=US make="GE" model="LOGIQE9" rows=600 cols=800]
rect 0,0,800,52

[modality=US make="GE" model="Vivid E9" rows=480 cols=640]
rect 0,0,640,44

[modality=US make="Siemens" model="S2000" rows=768 cols=1024]
rect 0,0,1024,64

[modality=US make="Philips" model="EPIQ 7" rows=600 cols=800]
rect 0,0,800,56
rect 640,544,160,56

[modality=US make="Toshiba" model="Aplio 500" rows=480 cols=640]
rect 0,0,640,40

[modality=US make="Acuson" model="Sequoia" rows=768 cols=1024]
rect 0,0,1024,60

[modality=US make="SonoSite" model="M-Turbo" rows=480 cols=640]
rect 0,0,640,36

[modality=XA make="GE" model="Innova" rows=1024 cols=1024]
rect 0,0,1024,40
)";

/// Shipped anonymizer table: pseudonym substitutions, date jitter, UID
/// hashing, technical keeps; everything unlisted is removed, private
/// groups included.
inline constexpr std::string_view kAnonScript = R"(# Default anonymizer table.
(0008,0050) := param(accession)
(0010,0020) := param(mrn)
(0010,0010) := replace("ANONYMOUS")
(0010,0030) := remove
(0010,0040) := keep

(0008,0020) := jitterdate
(0008,0021) := jitterdate
(0008,0022) := jitterdate
(0008,0023) := jitterdate
(0008,002A) := jitterdate

(0008,0018) := hashuid
(0020,000D) := hashuid
(0020,000E) := hashuid
(0020,0052) := hashuid

(0008,0090) := empty
(0020,0010) := empty

(0008,0008) := keep
(0008,0016) := keep
(0008,0030) := keep
(0008,0060) := keep
(0008,0064) := keep
(0008,0070) := keep
(0008,1090) := keep
(0018,0015) := keep
(0018,0050) := keep
(0020,0011) := keep
(0020,0013) := keep
(0028,0002) := keep
(0028,0004) := keep
(0028,0008) := keep
(0028,0010) := keep
(0028,0011) := keep
(0028,0030) := keep
(0028,0100) := keep
(0028,0101) := keep
(0028,0102) := keep
(0028,0103) := keep
(0028,0301) := keep
(0028,1050) := keep
(0028,1051) := keep
(0028,1052) := keep
(0028,1053) := keep
(7FE0,0010) := keep

default := remove
private := remove
)";

}  // namespace deid::rules::defaults
