#include "segev/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace segev {

double box_area(const Box& b) {
    const double w = b.x_max - b.x_min;
    const double h = b.y_max - b.y_min;
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

double box_intersection(const Box& a, const Box& b) {
    const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    if (w <= 0.0) return 0.0;
    const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (h <= 0.0) return 0.0;
    return w * h;
}

double box_iou(const Box& a, const Box& b) {
    const double inter = box_intersection(a, b);
    const double uni = box_area(a) + box_area(b) - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

Point box_center(const Box& b) {
    return {(b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0};
}

Box clip_box(const Box& b, double width, double height) {
    return {std::clamp(b.x_min, 0.0, width), std::clamp(b.y_min, 0.0, height),
            std::clamp(b.x_max, 0.0, width), std::clamp(b.y_max, 0.0, height)};
}

std::vector<std::size_t> nms(std::span<const ScoredBox> candidates,
                             double iou_threshold) {
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return candidates[a].score > candidates[b].score;
                     });

    std::vector<std::size_t> kept;
    std::vector<bool> suppressed(candidates.size(), false);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const std::size_t i = order[rank];
        if (suppressed[i]) continue;
        kept.push_back(i);
        for (std::size_t later = rank + 1; later < order.size(); ++later) {
            const std::size_t j = order[later];
            if (suppressed[j]) continue;
            if (box_iou(candidates[i].box, candidates[j].box) > iou_threshold) {
                suppressed[j] = true;
            }
        }
    }
    return kept;
}

}  // namespace segev
