#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "segev/geometry.hpp"
#include "segev/mask.hpp"

namespace segev {

struct Disk {
    Point center;
    double radius = 0.0;
};

struct Polygon {
    std::vector<Point> vertices;
};

// rectangle | disk | polygon
using ShapeGeometry = std::variant<Box, Disk, Polygon>;

struct SceneNode {
    int id = 0;
    int depth = 0;  // 0 for root objects
    ShapeGeometry shape;
    std::vector<SceneNode> children;  // parts; rasterizations are subsets of the parent's
};

// Synthetic scene. Roots are in z-order: later entries are on top.
struct Scene {
    int width = 0;
    int height = 0;
    std::uint64_t seed = 0;
    std::vector<SceneNode> roots;
};

struct SceneParams {
    int width = 256;
    int height = 256;
    int min_objects = 1;
    int max_objects = 8;
    double part_probability = 0.5;
    std::uint64_t min_object_area = 32;
};

enum class GtLevel { roots_only, all_nodes };

struct GroundTruthEntry {
    int node_id = 0;
    int depth = 0;
    int parent_id = -1;  // -1 for roots
    int root_id = 0;
    Rle visible_mask;
    Box box;  // mask_to_box(visible_mask)
    std::uint64_t area = 0;
};

struct GroundTruth {
    int width = 0;
    int height = 0;
    std::vector<GroundTruthEntry> entries;  // ascending node_id
};

// Pixel-center rasterization: a pixel is foreground iff its center
// (col+0.5, row+0.5) lies in the shape. Boxes are half-open.
BinaryMask rasterize_shape(const ShapeGeometry& shape, int width, int height);

// Deterministic scene synthesis. Guarantees: every root's unoccluded area is
// at least min_object_area, all shapes lie inside the image, coordinates are
// quantized to 1/8 pixel (lossless through canonical scene files), and the
// all-node ground truth has pairwise-distinct boxes (so box prompts resolve
// unambiguously). Throws when the constraints cannot be met within the retry
// budget.
Scene generate_scene(std::uint64_t seed, const SceneParams& params);

// Rasterizes every node, resolves occlusion among roots by z-order (topmost
// wins per pixel), clips part masks to their root's visible mask, and drops
// fully occluded nodes.
GroundTruth rasterize_ground_truth(const Scene& scene, GtLevel level);

struct DetectionNoise {
    double center_jitter_fraction = 0.0;  // of box width/height, < 0.5
    double scale_jitter_fraction = 0.0;   // relative size change, < 0.5
    double score_noise = 0.0;
    double drop_probability = 0.0;
    double duplicate_probability = 0.0;
};

// Detector stand-in: one jittered ScoredBox per ground-truth entry, with
// optional drops and re-jittered duplicates. With all-zero noise the output
// boxes equal the ground-truth boxes exactly, score 1.0.
std::vector<ScoredBox> oracle_detections(const GroundTruth& gt,
                                         const DetectionNoise& noise,
                                         std::uint64_t seed);

}  // namespace segev
