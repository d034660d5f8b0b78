#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "segev/geometry.hpp"

namespace segev {

// foreground_point | box
struct Prompt {
    std::variant<Point, Box> value;

    bool is_point() const { return std::holds_alternative<Point>(value); }
    const Point& point() const { return std::get<Point>(value); }
    const Box& box() const { return std::get<Box>(value); }
};

enum class Provenance { grid, object_aware };
enum class PromptMode { point, box };

// Ordered, homogeneous prompt batch fed to the decoder in one call.
// base_index is the global index of prompts[0]; slices of a batch keep their
// global positions so per-prompt decoder noise does not depend on how a batch
// was split.
struct PromptBatch {
    std::vector<Prompt> prompts;
    Provenance provenance = Provenance::grid;
    std::vector<double> source_scores;  // empty, or parallel to prompts
    std::size_t base_index = 0;

    std::size_t size() const { return prompts.size(); }
    bool empty() const { return prompts.empty(); }
};

struct SamplerConfig {
    int grid_per_side = 32;
    double nms_iou_threshold = 0.7;
    double detection_score_threshold = 0.05;
    std::size_t max_prompts = 320;
    PromptMode prompt_mode = PromptMode::box;
};

// per_side^2 foreground points at cell centers, row-major by (row, col).
PromptBatch grid_points(int per_side, int width, int height);

// Object-aware sampling: score-threshold the detections, run NMS, keep the
// max_prompts highest-scored survivors, clip to image bounds, and emit boxes
// or box centers in descending score order.
PromptBatch object_aware_prompts(std::span<const ScoredBox> detections,
                                 const SamplerConfig& cfg, int width,
                                 int height);

// First k prompts in batch order (object-aware batches are score-ordered, so
// this keeps the top-k). Identity when k >= size.
PromptBatch cap_prompts(PromptBatch batch, std::size_t k);

// Contiguous sub-batch [offset, offset+length); keeps global indices.
PromptBatch slice_batch(const PromptBatch& batch, std::size_t offset,
                        std::size_t length);

}  // namespace segev
