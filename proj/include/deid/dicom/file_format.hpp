#pragma once

#include "deid/dicom/dataset.hpp"
#include "deid/dicom/errors.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace deid::dicom {

/// Parses a DICOM Part-10 file: 128-byte preamble, "DICM", file meta
/// group, dataset. Supported dataset encodings are Implicit and Explicit
/// VR Little Endian; anything else raises UnsupportedTransferSyntax.
///
/// File meta elements (group 0002) are consumed, not kept in the result;
/// the transfer syntax is recorded on the DataSet. Group length elements
/// (element 0x0000) inside the dataset are dropped. Unknown tags are
/// preserved as opaque elements.
DataSet parse_file(std::span<const std::uint8_t> bytes);

/// Serializes a dataset as a Part-10 file, always Explicit VR Little
/// Endian. The file meta group is synthesized from the dataset's SOP
/// class/instance UIDs, so parse_file(write_file(ds)) == ds.
std::vector<std::uint8_t> write_file(const DataSet& ds);

}  // namespace deid::dicom
