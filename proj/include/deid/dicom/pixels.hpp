#pragma once

#include "deid/dicom/dataset.hpp"
#include "deid/dicom/errors.hpp"

#include <cstdint>
#include <vector>

namespace deid::dicom {

/// Rectangle in pixel coordinates: x is the column offset, y the row
/// offset. Must satisfy x+w <= cols and y+h <= rows of the target frame.
struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool operator==(const Rect&) const = default;
    std::string str() const;
};

/// Decoded native pixel data. Frame buffers are row-major; each holds
/// rows * cols * samples_per_pixel * bits_allocated/8 bytes.
struct PixelMatrix {
    int rows = 0;
    int cols = 0;
    int bits_allocated = 0;    // 8 or 16
    int samples_per_pixel = 0; // 1 or 3
    std::vector<std::vector<std::uint8_t>> frames;

    std::size_t bytes_per_sample() const { return bits_allocated / 8; }
    std::size_t bytes_per_pixel() const { return bytes_per_sample() * samples_per_pixel; }
    std::size_t frame_size() const {
        return static_cast<std::size_t>(rows) * cols * bytes_per_pixel();
    }

    bool operator==(const PixelMatrix&) const = default;
};

/// Decodes PixelData against Rows/Columns/BitsAllocated/SamplesPerPixel/
/// NumberOfFrames. Native encodings only.
PixelMatrix decode_pixels(const DataSet& ds);

/// Zeroes every sample inside the rectangle in every frame; everything
/// outside is untouched. Idempotent.
PixelMatrix blank_region(PixelMatrix px, const Rect& r);

/// Concatenated frame buffers, padded to even length, ready to store back
/// into PixelData.
std::vector<std::uint8_t> encode_frames(const PixelMatrix& px);

/// Returns a copy of the dataset with PixelData replaced by the matrix.
DataSet with_pixels(DataSet ds, const PixelMatrix& px);

}  // namespace deid::dicom
