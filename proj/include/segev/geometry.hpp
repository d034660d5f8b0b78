#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace segev {

// Pixel-space coordinates, origin at the top-left corner, x to the right,
// y downward. Boxes are corner coordinates, half-open conceptually: the box
// (0,0,2,2) covers the pixel columns 0..1 and rows 0..1.

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

struct Box {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }

    bool operator==(const Box&) const = default;
};

struct ScoredBox {
    Box box;
    double score = 0.0;  // confidence in [0, 1]
};

double box_area(const Box& b);

// Intersection area of two boxes; 0 when they do not overlap.
double box_intersection(const Box& a, const Box& b);

// Intersection over union in [0, 1]; 0 when the union has zero area.
double box_iou(const Box& a, const Box& b);

Point box_center(const Box& b);

// Clamps all corners into [0, width] x [0, height].
Box clip_box(const Box& b, double width, double height);

// Greedy non-maximum suppression. Candidates are ranked by descending score
// (ties broken by lower original index); a remaining box is discarded when
// its IoU with a kept box exceeds iou_threshold (strict inequality). Returns
// the kept candidate indices in rank order.
std::vector<std::size_t> nms(std::span<const ScoredBox> candidates,
                             double iou_threshold);

}  // namespace segev
