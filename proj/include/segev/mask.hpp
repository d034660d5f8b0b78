#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "segev/geometry.hpp"

namespace segev {

// Dense binary mask, row-major.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // size width*height, values 0/1

    BinaryMask() = default;
    BinaryMask(int w, int h)
        : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

    bool at(int row, int col) const {
        return bits[static_cast<std::size_t>(row) * width + col] != 0;
    }
    void set(int row, int col, bool value) {
        bits[static_cast<std::size_t>(row) * width + col] = value ? 1 : 0;
    }

    bool operator==(const BinaryMask&) const = default;
};

// Run-length encoded mask over the column-major pixel scan (down each column,
// then to the next column — the COCO convention). Runs alternate starting
// with background; canonical form has no interior zero runs, so two masks are
// equal iff their Rle values are equal.
struct Rle {
    int width = 0;
    int height = 0;
    std::vector<std::uint64_t> counts;

    bool operator==(const Rle&) const = default;
};

// Per-pixel scores in [0, 1], row-major.
struct SoftMask {
    int width = 0;
    int height = 0;
    std::vector<float> values;

    SoftMask() = default;
    SoftMask(int w, int h)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, 0.0f) {}
};

Rle rle_encode(const BinaryMask& m);

// Inverse of rle_encode. Accepts non-canonical inputs (interior zero runs);
// rejects counts that do not sum to width*height.
BinaryMask rle_decode(const Rle& r);

// Foreground pixel count (sum of odd-indexed runs).
std::uint64_t rle_area(const Rle& r);

// IoU computed by merging run boundaries, without decoding to dense masks.
// Equals the dense-mask IoU exactly; 0 when both masks are empty.
double rle_iou(const Rle& a, const Rle& b);

// Tightest box covering the foreground, corners on the pixel grid: a single
// pixel at column c, row r yields (c, r, c+1, r+1). nullopt for empty masks.
std::optional<Box> mask_to_box(const Rle& r);

// Even-odd scanline fill sampled at pixel centers (x+0.5, y+0.5). Regions
// outside the image are clipped. Requires at least 3 vertices.
BinaryMask polygon_rasterize(std::span<const Point> vertices, int width,
                             int height);

// COCO compressed RLE string codec: counts are delta-coded (count[i] -
// count[i-2] for i > 2) and packed into little-endian 5-bit chunks emitted as
// ASCII characters 48..111, with bit 0x20 marking continuation.
std::string coco_rle_to_string(const Rle& r);
Rle coco_rle_from_string(std::string_view s, int width, int height);

// Pixel is foreground iff its value is strictly greater than threshold.
BinaryMask binarize(const SoftMask& m, double threshold);

}  // namespace segev
