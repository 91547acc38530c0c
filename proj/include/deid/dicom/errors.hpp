#pragma once

#include "deid/error.hpp"

namespace deid::dicom {

/// Missing magic, truncated element, bad length, broken tag order.
struct MalformedFile : Error {
    using Error::Error;
};

/// Transfer syntax outside the supported set. The instance must surface
/// as an Error outcome, never pass through silently.
struct UnsupportedTransferSyntax : Error {
    explicit UnsupportedTransferSyntax(const std::string& uid)
        : Error("unsupported transfer syntax: " + uid), uid(uid) {}
    std::string uid;
};

struct MissingPixelData : Error {
    using Error::Error;
};

/// Pixel buffer length disagrees with Rows/Columns/BitsAllocated/frames.
struct InconsistentDimensions : Error {
    using Error::Error;
};

/// Compressed or otherwise undecodable pixel encoding.
struct UnsupportedEncoding : Error {
    using Error::Error;
};

struct RectOutOfBounds : Error {
    using Error::Error;
};

}  // namespace deid::dicom
