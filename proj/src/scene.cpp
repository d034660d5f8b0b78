#include "segev/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "segev/error.hpp"
#include "segev/rng.hpp"

namespace segev {

namespace {

constexpr int kPlacementAttempts = 200;
constexpr int kSceneAttempts = 32;

double quantize(double v) { return std::round(v * 8.0) / 8.0; }

Point quantize(Point p) { return {quantize(p.x), quantize(p.y)}; }

// Largest disk centered at the shape's natural center that fits inside it.
// Children are placed within this disk, which makes containment (and hence
// the part-mask-subset invariant) hold geometrically.
std::pair<Point, double> inscribed_disk(const ShapeGeometry& shape) {
    if (const auto* box = std::get_if<Box>(&shape)) {
        return {box_center(*box), std::min(box->width(), box->height()) / 2.0};
    }
    if (const auto* disk = std::get_if<Disk>(&shape)) {
        return {disk->center, disk->radius};
    }
    const auto& poly = std::get<Polygon>(shape);
    double cx = 0.0, cy = 0.0;
    for (const Point& v : poly.vertices) {
        cx += v.x;
        cy += v.y;
    }
    const auto n = static_cast<double>(poly.vertices.size());
    const Point center{cx / n, cy / n};
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        const Point& a = poly.vertices[i];
        const Point& b = poly.vertices[(i + 1) % poly.vertices.size()];
        const double abx = b.x - a.x, aby = b.y - a.y;
        const double len2 = abx * abx + aby * aby;
        double t = 0.0;
        if (len2 > 0.0) {
            t = std::clamp(((center.x - a.x) * abx + (center.y - a.y) * aby) / len2, 0.0, 1.0);
        }
        const double dx = center.x - (a.x + t * abx);
        const double dy = center.y - (a.y + t * aby);
        min_dist = std::min(min_dist, std::hypot(dx, dy));
    }
    return {center, min_dist};
}

ShapeGeometry random_root_shape(Rng& rng, const SceneParams& params) {
    const double min_half = std::max(2.0, std::sqrt(static_cast<double>(params.min_object_area)) / 2.0 + 1.0);
    const double max_half = std::max(min_half + 1.0,
                                     std::min(params.width, params.height) / 4.0);
    const int kind = static_cast<int>(rng.uniform_int(0, 4));  // 0-1 rect, 2-3 disk, 4 polygon
    if (kind <= 1) {
        const double hx = rng.uniform(min_half, max_half);
        const double hy = rng.uniform(min_half, max_half);
        const double cx = rng.uniform(hx, params.width - hx);
        const double cy = rng.uniform(hy, params.height - hy);
        return Box{quantize(cx - hx), quantize(cy - hy), quantize(cx + hx), quantize(cy + hy)};
    }
    if (kind <= 3) {
        const double r = rng.uniform(min_half, max_half);
        const double cx = rng.uniform(r, params.width - r);
        const double cy = rng.uniform(r, params.height - r);
        return Disk{quantize(Point{cx, cy}), quantize(r)};
    }
    // Star-shaped polygon around a center: angles in order keep it simple.
    const double r_max = rng.uniform(min_half * 1.3, max_half);
    const double cx = rng.uniform(r_max, params.width - r_max);
    const double cy = rng.uniform(r_max, params.height - r_max);
    const int vertex_count = static_cast<int>(rng.uniform_int(5, 8));
    Polygon poly;
    for (int i = 0; i < vertex_count; ++i) {
        const double angle = 2.0 * std::numbers::pi_v<double> *
                             (i + 0.3 * rng.unit()) / vertex_count;
        const double r = r_max * rng.uniform(0.55, 1.0);
        poly.vertices.push_back(
            quantize(Point{cx + r * std::cos(angle), cy + r * std::sin(angle)}));
    }
    return poly;
}

// Child shape inside the disk (center, radius), with a half-pixel margin so
// quantization cannot push it across the parent boundary.
ShapeGeometry random_part_shape(Rng& rng, Point center, double radius) {
    const double usable = radius - 0.5;
    if (rng.bernoulli(0.5)) {
        const double r = rng.uniform(std::max(1.0, usable * 0.25), usable * 0.6);
        const double max_offset = usable - r;
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi_v<double>);
        const double d = rng.uniform(0.0, max_offset);
        return Disk{quantize(Point{center.x + d * std::cos(angle),
                                   center.y + d * std::sin(angle)}),
                    quantize(r)};
    }
    const double half_diag = rng.uniform(std::max(1.0, usable * 0.25), usable * 0.6);
    const double aspect = rng.uniform(0.6, 1.6);
    double hx = half_diag / std::sqrt(1.0 + aspect * aspect) * aspect;
    double hy = hx / aspect;
    const double max_offset = usable - std::hypot(hx, hy);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi_v<double>);
    const double d = rng.uniform(0.0, std::max(0.0, max_offset));
    const Point c{center.x + d * std::cos(angle), center.y + d * std::sin(angle)};
    return Box{quantize(c.x - hx), quantize(c.y - hy), quantize(c.x + hx), quantize(c.y + hy)};
}

std::uint64_t raster_area(const BinaryMask& m) {
    std::uint64_t area = 0;
    for (auto b : m.bits) area += b;
    return area;
}

void attach_parts(Rng& rng, SceneNode& parent, const SceneParams& params,
                  int depth, int& next_id) {
    if (depth >= 2) return;  // hierarchy depth capped at 3 levels (0..2)
    if (!rng.bernoulli(params.part_probability)) return;
    const auto [center, radius] = inscribed_disk(parent.shape);
    if (radius < 3.0) return;  // too small to host a visible part
    for (int attempt = 0; attempt < 16; ++attempt) {
        ShapeGeometry shape = random_part_shape(rng, center, radius);
        if (raster_area(rasterize_shape(shape, params.width, params.height)) == 0) continue;
        SceneNode child;
        child.id = next_id++;
        child.depth = depth + 1;
        child.shape = std::move(shape);
        attach_parts(rng, child, params, depth + 1, next_id);
        parent.children.push_back(std::move(child));
        return;
    }
}

bool has_duplicate_boxes(const GroundTruth& gt) {
    std::set<std::array<double, 4>> seen;
    for (const auto& e : gt.entries) {
        if (!seen.insert({e.box.x_min, e.box.y_min, e.box.x_max, e.box.y_max}).second) {
            return true;
        }
    }
    return false;
}

struct FlatNode {
    const SceneNode* node;
    int depth;
    int parent_id;
    int root_index;  // index into scene.roots
};

void flatten(const SceneNode& node, int parent_id, int root_index, int depth,
             std::vector<FlatNode>& out) {
    out.push_back({&node, depth, parent_id, root_index});
    for (const SceneNode& child : node.children) {
        flatten(child, node.id, root_index, depth + 1, out);
    }
}

}  // namespace

BinaryMask rasterize_shape(const ShapeGeometry& shape, int width, int height) {
    if (const auto* box = std::get_if<Box>(&shape)) {
        BinaryMask m(width, height);
        for (int row = 0; row < height; ++row) {
            const double cy = row + 0.5;
            if (cy < box->y_min || cy >= box->y_max) continue;
            for (int col = 0; col < width; ++col) {
                const double cx = col + 0.5;
                if (cx >= box->x_min && cx < box->x_max) m.set(row, col, true);
            }
        }
        return m;
    }
    if (const auto* disk = std::get_if<Disk>(&shape)) {
        BinaryMask m(width, height);
        const double r2 = disk->radius * disk->radius;
        for (int row = 0; row < height; ++row) {
            const double dy = row + 0.5 - disk->center.y;
            for (int col = 0; col < width; ++col) {
                const double dx = col + 0.5 - disk->center.x;
                if (dx * dx + dy * dy <= r2) m.set(row, col, true);
            }
        }
        return m;
    }
    return polygon_rasterize(std::get<Polygon>(shape).vertices, width, height);
}

Scene generate_scene(std::uint64_t seed, const SceneParams& params) {
    require(params.width >= 1 && params.height >= 1, "generate_scene: image must be at least 1x1");
    require(params.min_objects >= 0 && params.max_objects >= params.min_objects,
            "generate_scene: invalid object_count_range [", params.min_objects,
            ", ", params.max_objects, "]");
    require(params.part_probability >= 0.0 && params.part_probability <= 1.0,
            "generate_scene: part_probability out of [0,1]");
    const auto image_area =
        static_cast<std::uint64_t>(params.width) * static_cast<std::uint64_t>(params.height);
    require(image_area >= params.min_object_area,
            "generate_scene: min_object_area ", params.min_object_area,
            " exceeds image area ", image_area);

    Rng rng(seed);
    const int object_count = static_cast<int>(rng.uniform_int(params.min_objects, params.max_objects));

    for (int scene_attempt = 0; scene_attempt < kSceneAttempts; ++scene_attempt) {
        Scene scene;
        scene.width = params.width;
        scene.height = params.height;
        scene.seed = seed;
        int next_id = 0;
        bool placed_all = true;
        for (int obj = 0; obj < object_count; ++obj) {
            bool placed = false;
            for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
                ShapeGeometry shape = random_root_shape(rng, params);
                if (raster_area(rasterize_shape(shape, params.width, params.height)) <
                    params.min_object_area) {
                    continue;
                }
                SceneNode root;
                root.id = next_id++;
                root.depth = 0;
                root.shape = std::move(shape);
                attach_parts(rng, root, params, 0, next_id);
                scene.roots.push_back(std::move(root));
                placed = true;
                break;
            }
            if (!placed) {
                placed_all = false;
                break;
            }
        }
        if (!placed_all) {
            fail("generate_scene: could not place an object of area >= ",
                 params.min_object_area, " within ", kPlacementAttempts,
                 " attempts (seed ", seed, ")");
        }
        if (!has_duplicate_boxes(rasterize_ground_truth(scene, GtLevel::all_nodes))) {
            return scene;
        }
    }
    fail("generate_scene: could not produce distinct ground-truth boxes after ",
         kSceneAttempts, " attempts (seed ", seed, ")");
}

GroundTruth rasterize_ground_truth(const Scene& scene, GtLevel level) {
    GroundTruth gt;
    gt.width = scene.width;
    gt.height = scene.height;

    std::vector<FlatNode> nodes;
    for (std::size_t i = 0; i < scene.roots.size(); ++i) {
        flatten(scene.roots[i], -1, static_cast<int>(i), 0, nodes);
    }

    // Root visibility: topmost root wins each pixel.
    const std::size_t pixel_count =
        static_cast<std::size_t>(scene.width) * static_cast<std::size_t>(scene.height);
    std::vector<std::uint8_t> occupied(pixel_count, 0);
    std::vector<BinaryMask> root_visible(scene.roots.size());
    for (std::size_t i = scene.roots.size(); i-- > 0;) {
        BinaryMask raster = rasterize_shape(scene.roots[i].shape, scene.width, scene.height);
        for (std::size_t p = 0; p < pixel_count; ++p) {
            if (raster.bits[p] && !occupied[p]) {
                occupied[p] = 1;
            } else {
                raster.bits[p] = 0;
            }
        }
        root_visible[i] = std::move(raster);
    }

    for (const FlatNode& fn : nodes) {
        if (level == GtLevel::roots_only && fn.depth != 0) continue;
        BinaryMask visible;
        if (fn.depth == 0) {
            visible = root_visible[fn.root_index];
        } else {
            visible = rasterize_shape(fn.node->shape, scene.width, scene.height);
            const BinaryMask& root_mask = root_visible[fn.root_index];
            for (std::size_t p = 0; p < pixel_count; ++p) {
                visible.bits[p] = visible.bits[p] && root_mask.bits[p];
            }
        }
        GroundTruthEntry entry;
        entry.node_id = fn.node->id;
        entry.depth = fn.depth;
        entry.parent_id = fn.parent_id;
        entry.root_id = scene.roots[fn.root_index].id;
        entry.visible_mask = rle_encode(visible);
        entry.area = rle_area(entry.visible_mask);
        if (entry.area == 0) continue;  // fully occluded
        entry.box = *mask_to_box(entry.visible_mask);
        gt.entries.push_back(std::move(entry));
    }
    std::sort(gt.entries.begin(), gt.entries.end(),
              [](const GroundTruthEntry& a, const GroundTruthEntry& b) {
                  return a.node_id < b.node_id;
              });
    return gt;
}

std::vector<ScoredBox> oracle_detections(const GroundTruth& gt,
                                         const DetectionNoise& noise,
                                         std::uint64_t seed) {
    require(noise.center_jitter_fraction >= 0.0 && noise.center_jitter_fraction < 0.5 &&
                noise.scale_jitter_fraction >= 0.0 && noise.scale_jitter_fraction < 0.5,
            "oracle_detections: jitter fractions must be in [0, 0.5)");
    require(noise.score_noise >= 0.0 && noise.score_noise <= 1.0 &&
                noise.drop_probability >= 0.0 && noise.drop_probability <= 1.0 &&
                noise.duplicate_probability >= 0.0 && noise.duplicate_probability <= 1.0,
            "oracle_detections: noise parameters must be in [0, 1]");

    Rng rng(seed);
    std::vector<ScoredBox> detections;
    detections.reserve(gt.entries.size());

    auto jittered = [&](const Box& b) {
        const Point c = box_center(b);
        const double w = b.width();
        const double h = b.height();
        const double cx = c.x + rng.signed_unit(noise.center_jitter_fraction) * w;
        const double cy = c.y + rng.signed_unit(noise.center_jitter_fraction) * h;
        const double hw = (w / 2.0) * (1.0 + rng.signed_unit(noise.scale_jitter_fraction));
        const double hh = (h / 2.0) * (1.0 + rng.signed_unit(noise.scale_jitter_fraction));
        const double score = std::clamp(1.0 - rng.unit() * noise.score_noise, 0.0, 1.0);
        return ScoredBox{{cx - hw, cy - hh, cx + hw, cy + hh}, score};
    };

    for (const GroundTruthEntry& entry : gt.entries) {
        if (rng.bernoulli(noise.drop_probability)) continue;
        detections.push_back(jittered(entry.box));
        if (rng.bernoulli(noise.duplicate_probability)) {
            detections.push_back(jittered(entry.box));
        }
    }
    return detections;
}

}  // namespace segev
