#include "monotile/prototile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monotile {

namespace {

Prototile build_prototile()
{
    Prototile t{};
    CycNum p = kZero;
    for (int i = 0; i < kEdgeCount; ++i) {
        t.vertices[static_cast<std::size_t>(i)] = p;
        p = p + unit(kDirectionWord[static_cast<std::size_t>(i)]);
    }
    if (p != kZero) throw std::logic_error("prototile direction word does not close");
    return t;
}

BoundingCircle build_circle()
{
    const auto& t = prototile();
    Vec2 c{};
    for (const auto& v : t.vertices) {
        const auto xy = to_xy(v);
        c.x += xy.x;
        c.y += xy.y;
    }
    c.x /= kEdgeCount;
    c.y /= kEdgeCount;
    double r = 0.0;
    for (const auto& v : t.vertices) {
        const auto xy = to_xy(v);
        r = std::max(r, std::hypot(xy.x - c.x, xy.y - c.y));
    }
    // Pad by a hair so float evaluation of transformed vertices stays inside.
    return {c, r * (1.0 + 1e-12) + 1e-12};
}

} // namespace

const Prototile& prototile()
{
    static const Prototile tile = build_prototile();
    return tile;
}

HalfSurd twice_signed_area(const TileVertices& poly)
{
    HalfSurd sum{};
    for (std::size_t i = 0; i < poly.size(); ++i) sum += cross(poly[i], poly[(i + 1) % poly.size()]);
    return sum;
}

int prototile_orientation()
{
    static const int sign = twice_signed_area(prototile().vertices).sign();
    return sign;
}

HalfSurd tile_area()
{
    HalfSurd twice = twice_signed_area(prototile().vertices);
    if (twice.sign() < 0) twice = HalfSurd{} - twice;
    if (twice.r % 2 != 0 || twice.s % 2 != 0) throw std::logic_error("prototile area not representable");
    return {twice.r / 2, twice.s / 2};
}

const BoundingCircle& prototile_bounding_circle()
{
    static const BoundingCircle circle = build_circle();
    return circle;
}

} // namespace monotile
