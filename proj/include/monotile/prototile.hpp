#pragma once

#include "monotile/cyc.hpp"

#include <array>

namespace monotile {

inline constexpr int kEdgeCount = 14;

/// Edge direction exponents: edge i of the prototile is unit(kDirectionWord[i]).
inline constexpr std::array<int, kEdgeCount> kDirectionWord{3, 1, 4, 2, 11, 9, 0, 10, 7, 9, 6, 8, 5, 3};

/// Key vertex labels 1..4 map to these 1-based vertex indices.
inline constexpr std::array<int, 4> kKeyVertex{4, 6, 8, 14};

using TileVertices = std::array<CycNum, kEdgeCount>;

struct Prototile {
    TileVertices vertices; // V1..V14; V15 == V1 is implicit

    /// 1-based vertex access, wrapping 15 back to 1.
    const CycNum& vertex(int index) const { return vertices[static_cast<std::size_t>((index - 1) % kEdgeCount)]; }
    const CycNum& key_vertex(int label) const { return vertex(kKeyVertex[static_cast<std::size_t>(label - 1)]); }
};

/// The Tile(1,1) polygon with V1 at the origin. Its vertex order runs
/// clockwise (up the y axis first), so its signed shoelace area is negative.
const Prototile& prototile();

/// Sign of the prototile's signed area: -1 (clockwise).
int prototile_orientation();

/// Exact unsigned tile area 3 + 3*sqrt(3), i.e. HalfSurd{6, 6}.
HalfSurd tile_area();

/// Exact doubled shoelace area of a closed polygon.
HalfSurd twice_signed_area(const TileVertices& poly);

/// Center and radius of a disc covering the prototile (float).
struct BoundingCircle {
    Vec2 center;
    double radius = 0.0;
};
const BoundingCircle& prototile_bounding_circle();

} // namespace monotile
