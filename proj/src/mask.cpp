#include "segev/mask.hpp"

#include <algorithm>
#include <cmath>

#include "segev/error.hpp"

namespace segev {

namespace {

std::uint64_t pixel_count(const Rle& r) {
    return static_cast<std::uint64_t>(r.width) * static_cast<std::uint64_t>(r.height);
}

std::uint64_t counts_sum(const Rle& r) {
    std::uint64_t sum = 0;
    for (auto c : r.counts) sum += c;
    return sum;
}

}  // namespace

Rle rle_encode(const BinaryMask& m) {
    Rle r;
    r.width = m.width;
    r.height = m.height;
    std::uint8_t current = 0;  // runs start from background
    std::uint64_t run = 0;
    for (int col = 0; col < m.width; ++col) {
        for (int row = 0; row < m.height; ++row) {
            const std::uint8_t v = m.bits[static_cast<std::size_t>(row) * m.width + col] ? 1 : 0;
            if (v != current) {
                r.counts.push_back(run);
                run = 0;
                current = v;
            }
            ++run;
        }
    }
    r.counts.push_back(run);
    if (m.width == 0 || m.height == 0) r.counts.assign(1, 0);
    return r;
}

BinaryMask rle_decode(const Rle& r) {
    require(counts_sum(r) == pixel_count(r), "rle_decode: counts sum to ",
            counts_sum(r), " but mask has ", pixel_count(r), " pixels");
    BinaryMask m(r.width, r.height);
    std::uint64_t pos = 0;
    bool foreground = false;
    for (auto count : r.counts) {
        if (foreground) {
            for (std::uint64_t k = 0; k < count; ++k) {
                const std::uint64_t q = pos + k;
                const auto col = static_cast<int>(q / r.height);
                const auto row = static_cast<int>(q % r.height);
                m.bits[static_cast<std::size_t>(row) * r.width + col] = 1;
            }
        }
        pos += count;
        foreground = !foreground;
    }
    return m;
}

std::uint64_t rle_area(const Rle& r) {
    std::uint64_t area = 0;
    for (std::size_t i = 1; i < r.counts.size(); i += 2) area += r.counts[i];
    return area;
}

double rle_iou(const Rle& a, const Rle& b) {
    require(a.width == b.width && a.height == b.height,
            "rle_iou: dimension mismatch (", a.width, "x", a.height, " vs ",
            b.width, "x", b.height, ")");
    std::size_t ia = 0, ib = 0;
    std::uint64_t rem_a = a.counts.empty() ? 0 : a.counts[0];
    std::uint64_t rem_b = b.counts.empty() ? 0 : b.counts[0];
    bool fg_a = false, fg_b = false;
    std::uint64_t inter = 0, uni = 0;

    auto advance = [](const Rle& r, std::size_t& i, std::uint64_t& rem, bool& fg) {
        while (rem == 0 && i + 1 < r.counts.size()) {
            ++i;
            rem = r.counts[i];
            fg = !fg;
        }
    };

    std::uint64_t remaining = pixel_count(a);
    while (remaining > 0) {
        advance(a, ia, rem_a, fg_a);
        advance(b, ib, rem_b, fg_b);
        const std::uint64_t step = std::min({rem_a, rem_b, remaining});
        require(step > 0, "rle_iou: counts shorter than ", pixel_count(a), " pixels");
        if (fg_a && fg_b) inter += step;
        if (fg_a || fg_b) uni += step;
        rem_a -= step;
        rem_b -= step;
        remaining -= step;
    }
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

std::optional<Box> mask_to_box(const Rle& r) {
    const std::uint64_t h = static_cast<std::uint64_t>(r.height);
    if (h == 0) return std::nullopt;
    std::uint64_t pos = 0;
    bool foreground = false;
    std::int64_t min_col = -1, max_col = -1, min_row = -1, max_row = -1;
    for (auto count : r.counts) {
        if (foreground && count > 0) {
            const std::uint64_t first = pos;
            const std::uint64_t last = pos + count - 1;
            const auto col0 = static_cast<std::int64_t>(first / h);
            const auto col1 = static_cast<std::int64_t>(last / h);
            std::int64_t row0, row1;
            if (col0 == col1) {
                row0 = static_cast<std::int64_t>(first % h);
                row1 = static_cast<std::int64_t>(last % h);
            } else {
                // A run crossing a column boundary touches the bottom of one
                // column and the top of the next.
                row0 = 0;
                row1 = static_cast<std::int64_t>(h) - 1;
            }
            if (min_col < 0) {
                min_col = col0;
                max_col = col1;
                min_row = row0;
                max_row = row1;
            } else {
                min_col = std::min(min_col, col0);
                max_col = std::max(max_col, col1);
                min_row = std::min(min_row, row0);
                max_row = std::max(max_row, row1);
            }
        }
        pos += count;
        foreground = !foreground;
    }
    if (min_col < 0) return std::nullopt;
    return Box{static_cast<double>(min_col), static_cast<double>(min_row),
               static_cast<double>(max_col + 1), static_cast<double>(max_row + 1)};
}

BinaryMask polygon_rasterize(std::span<const Point> vertices, int width,
                             int height) {
    require(vertices.size() >= 3, "polygon_rasterize: need at least 3 vertices, got ",
            vertices.size());
    for (const Point& v : vertices) {
        require(std::isfinite(v.x) && std::isfinite(v.y),
                "polygon_rasterize: non-finite vertex coordinate");
    }
    BinaryMask m(width, height);
    const std::size_t n = vertices.size();
    std::vector<double> crossings;
    for (int row = 0; row < height; ++row) {
        const double sy = row + 0.5;
        crossings.clear();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Point& a = vertices[i];
            const Point& b = vertices[j];
            if ((a.y > sy) != (b.y > sy)) {
                crossings.push_back(a.x + (sy - a.y) * (b.x - a.x) / (b.y - a.y));
            }
        }
        std::sort(crossings.begin(), crossings.end());
        // Inside on [c[2k], c[2k+1]): a pixel center there has an odd number
        // of crossings strictly to its right.
        for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
            const double lo = crossings[k];
            const double hi = crossings[k + 1];
            // Pixel centers x+0.5 with lo <= x+0.5 < hi. The ceil/floor
            // candidates are nudged with direct comparisons so the result
            // agrees exactly with a per-pixel crossing count.
            int first = static_cast<int>(std::ceil(lo - 0.5));
            while (first + 0.5 < lo) ++first;
            while (first - 1 + 0.5 >= lo) --first;
            int last = static_cast<int>(std::floor(hi - 0.5));
            while (last + 0.5 >= hi) --last;
            while (last + 1 + 0.5 < hi) ++last;
            first = std::max(first, 0);
            last = std::min(last, width - 1);
            for (int col = first; col <= last; ++col) m.set(row, col, true);
        }
    }
    return m;
}

std::string coco_rle_to_string(const Rle& r) {
    std::string s;
    s.reserve(r.counts.size() * 2);
    for (std::size_t i = 0; i < r.counts.size(); ++i) {
        std::int64_t x = static_cast<std::int64_t>(r.counts[i]);
        if (i > 2) x -= static_cast<std::int64_t>(r.counts[i - 2]);
        bool more = true;
        while (more) {
            const int chunk = static_cast<int>(x & 0x1f);
            x >>= 5;  // arithmetic shift
            more = (chunk & 0x10) ? (x != -1) : (x != 0);
            s.push_back(static_cast<char>((more ? (chunk | 0x20) : chunk) + 48));
        }
    }
    return s;
}

Rle coco_rle_from_string(std::string_view s, int width, int height) {
    Rle r;
    r.width = width;
    r.height = height;
    std::size_t p = 0;
    while (p < s.size()) {
        std::int64_t x = 0;
        int k = 0;
        bool more = true;
        while (more) {
            require(p < s.size(), "coco_rle_from_string: truncated chunk sequence at byte ", p);
            const int c = static_cast<int>(static_cast<unsigned char>(s[p])) - 48;
            require(c >= 0 && c < 64,
                    "coco_rle_from_string: illegal character at byte ", p);
            x |= static_cast<std::int64_t>(c & 0x1f) << (5 * k);
            more = (c & 0x20) != 0;
            ++p;
            ++k;
            if (!more && (c & 0x10)) x |= ~std::int64_t{0} << (5 * k);
        }
        if (r.counts.size() > 2) {
            x += static_cast<std::int64_t>(r.counts[r.counts.size() - 2]);
        }
        require(x >= 0, "coco_rle_from_string: negative run length decoded at byte ", p);
        r.counts.push_back(static_cast<std::uint64_t>(x));
    }
    const std::uint64_t expected = pixel_count(r);
    require(counts_sum(r) == expected, "coco_rle_from_string: decoded counts sum to ",
            counts_sum(r), " but mask has ", expected, " pixels");
    return r;
}

BinaryMask binarize(const SoftMask& m, double threshold) {
    BinaryMask out(m.width, m.height);
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        out.bits[i] = (static_cast<double>(m.values[i]) > threshold) ? 1 : 0;
    }
    return out;
}

}  // namespace segev
