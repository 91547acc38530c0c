#include "deid/dicom/pixels.hpp"

#include <cstring>

namespace deid::dicom {

std::string Rect::str() const {
    return std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(w) + "," +
           std::to_string(h);
}

PixelMatrix decode_pixels(const DataSet& ds) {
    const Element* pd = ds.find(tags::kPixelData);
    if (!pd) throw MissingPixelData("no PixelData element");
    if (pd->undefined_length) throw UnsupportedEncoding("encapsulated pixel data");

    auto need = [&](Tag t) -> std::int64_t {
        auto v = ds.int_value(t);
        if (!v) {
            throw InconsistentDimensions(std::string(tag_name(t).empty() ? t.str() : std::string(tag_name(t))) +
                                         " missing or non-numeric");
        }
        return *v;
    };

    PixelMatrix px;
    px.rows = static_cast<int>(need(tags::kRows));
    px.cols = static_cast<int>(need(tags::kColumns));
    px.bits_allocated = static_cast<int>(need(tags::kBitsAllocated));
    px.samples_per_pixel = ds.contains(tags::kSamplesPerPixel)
                               ? static_cast<int>(need(tags::kSamplesPerPixel))
                               : 1;
    std::int64_t frames = ds.contains(tags::kNumberOfFrames) ? need(tags::kNumberOfFrames) : 1;

    if (px.bits_allocated != 8 && px.bits_allocated != 16) {
        throw UnsupportedEncoding("BitsAllocated " + std::to_string(px.bits_allocated));
    }
    if (px.samples_per_pixel != 1 && px.samples_per_pixel != 3) {
        throw UnsupportedEncoding("SamplesPerPixel " + std::to_string(px.samples_per_pixel));
    }
    if (px.rows <= 0 || px.cols <= 0 || frames <= 0) {
        throw InconsistentDimensions("non-positive image dimensions");
    }

    std::size_t frame_size = px.frame_size();
    std::size_t total = frame_size * static_cast<std::size_t>(frames);
    std::size_t padded = total + (total % 2);
    if (pd->value.size() != total && pd->value.size() != padded) {
        throw InconsistentDimensions("PixelData holds " + std::to_string(pd->value.size()) +
                                     " bytes, dimensions demand " + std::to_string(total));
    }

    px.frames.reserve(static_cast<std::size_t>(frames));
    for (std::int64_t f = 0; f < frames; ++f) {
        auto begin = pd->value.begin() + static_cast<std::ptrdiff_t>(f * frame_size);
        px.frames.emplace_back(begin, begin + static_cast<std::ptrdiff_t>(frame_size));
    }
    return px;
}

PixelMatrix blank_region(PixelMatrix px, const Rect& r) {
    if (r.x < 0 || r.y < 0 || r.w < 0 || r.h < 0 || r.x + r.w > px.cols || r.y + r.h > px.rows) {
        throw RectOutOfBounds("rect " + r.str() + " outside " + std::to_string(px.cols) + "x" +
                              std::to_string(px.rows) + " frame");
    }
    if (r.w == 0 || r.h == 0) return px;

    std::size_t bpp = px.bytes_per_pixel();
    std::size_t row_stride = static_cast<std::size_t>(px.cols) * bpp;
    std::size_t span = static_cast<std::size_t>(r.w) * bpp;
    for (auto& frame : px.frames) {
        for (int row = r.y; row < r.y + r.h; ++row) {
            std::size_t offset = static_cast<std::size_t>(row) * row_stride +
                                 static_cast<std::size_t>(r.x) * bpp;
            std::memset(frame.data() + offset, 0, span);
        }
    }
    return px;
}

std::vector<std::uint8_t> encode_frames(const PixelMatrix& px) {
    std::vector<std::uint8_t> out;
    out.reserve(px.frames.size() * px.frame_size() + 1);
    for (const auto& frame : px.frames) {
        out.insert(out.end(), frame.begin(), frame.end());
    }
    if (out.size() % 2 != 0) out.push_back(0);
    return out;
}

DataSet with_pixels(DataSet ds, const PixelMatrix& px) {
    Vr vr = px.bits_allocated == 8 ? vr::OB : vr::OW;
    ds.set(Element::of_bytes(tags::kPixelData, vr, encode_frames(px)));
    return ds;
}

}  // namespace deid::dicom
