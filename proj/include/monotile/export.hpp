#pragma once

#include "monotile/cluster.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monotile {

/// Axis-aligned rectangle in plane units.
struct Window {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    /// Accepts corners in either order; throws if width or height is not positive.
    static Window from_corners(double xa, double ya, double xb, double yb);
    bool contains(const Vec2& p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

struct RenderOptions {
    std::optional<Window> window;
    double stroke_width = 0.05;
    bool show_keypoints = false;
    int precision = 17;
    std::uint64_t max_tiles = std::numeric_limits<std::uint64_t>::max();
    unsigned threads = 1;
    /// Candidate key points drawn in red (groups of four); the cluster's own
    /// keys are drawn in blue.
    std::vector<CycNum> candidate_keys;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `tile,vertex,x,y`, one row per tile vertex 1..14.
void export_csv(std::ostream& os, const Cluster& c, const RenderOptions& opts = {});

/// 16 lines per tile: vertices 1..15 (15 repeats 1) as `x,y`, then `NaN,NaN`.
void export_legacy_rows(std::ostream& os, const Cluster& c, const RenderOptions& opts = {});

/// Exact, versioned JSON archive of the placements and key anchors.
void export_transforms(std::ostream& os, const Cluster& c, std::optional<int> iteration = std::nullopt);

struct TransformDocument {
    Cluster cluster;
    std::optional<int> iteration;
};

TransformDocument load_transforms(std::istream& is);

/// Indices (0-based) of tiles whose covering disc meets the window, in order.
std::vector<std::size_t> visible_tiles(const Cluster& c, const Window& window);

/// Float center of the covering disc of a placed tile.
Vec2 tile_center(const Isometry& iso);

/// SVG 1.1, one closed path per tile, y axis pointing up in the plane.
void render_svg(std::ostream& os, const Cluster& c, const RenderOptions& opts = {});

/// Shortest round-trippable decimal at `precision` significant digits.
std::string format_double(double v, int precision = 17);

} // namespace monotile
