#include "monotile/cluster.hpp"
#include "monotile/prototile.hpp"
#include "monotile/verify.hpp"

#include "doctest.h"

#include <cmath>
#include <set>

using namespace monotile;

namespace {

// Reference x and y columns, rows 1..15, as running sums of cosines and sines.
struct FloatTile {
    std::array<double, 15> x;
    std::array<double, 15> y;
};

FloatTile reference_columns()
{
    const auto c = [](double deg) { return std::cos(deg * M_PI / 180); };
    const auto s = [](double deg) { return std::sin(deg * M_PI / 180); };
    const double x6 = c(30) + c(120) + c(60) + c(330);
    const double y6 = s(30) + s(120) + s(60) + s(330);
    return {
        {0, 0, c(30), c(30) + c(120), c(30) + c(120) + c(60), x6, x6, x6 + 1, x6 + 1 + c(300),
         x6 + 1 + c(300) + c(210), x6 + 1 + c(300) + c(210), x6 + c(300) + c(210),
         x6 + c(300) + c(210) + c(240), x6 + c(300) + c(210) + c(240) + c(150),
         x6 + c(300) + c(210) + c(240) + c(150)},
        {0, 1, 1 + s(30), 1 + s(30) + s(120), 1 + s(30) + s(120) + s(60), 1 + y6, y6, y6, y6 + s(300),
         y6 + s(300) + s(210), y6 + s(300) + s(210) - 1, y6 + s(300) + s(210) - 1,
         y6 + s(300) + s(210) - 1 + s(240), y6 + s(300) + s(210) - 1 + s(240) + s(150),
         y6 + s(300) + s(210) + s(240) + s(150)},
    };
}

double float_shoelace(const FloatTile& t)
{
    double sum = 0;
    for (std::size_t i = 0; i + 1 < 15; ++i) sum += t.x[i] * t.y[i + 1] - t.x[i + 1] * t.y[i];
    return sum / 2;
}

} // namespace

TEST_CASE("prototile vertices match the float column lists")
{
    const FloatTile cols = reference_columns();
    const auto& t = prototile();
    for (int i = 1; i <= 15; ++i) {
        const Vec2 v = to_xy(t.vertex(i));
        CHECK(std::abs(v.x - cols.x[static_cast<std::size_t>(i - 1)]) < 1e-12);
        CHECK(std::abs(v.y - cols.y[static_cast<std::size_t>(i - 1)]) < 1e-12);
    }
    CHECK(t.vertex(1) == kZero);
    CHECK(t.vertex(2) == CycNum{0, 0, 0, 1});
    CHECK(t.vertex(4) == CycNum{-1, 1, 1, 1});
    CHECK(t.vertex(6) == CycNum{-1, 2, 2, 0});
    CHECK(t.vertex(8) == CycNum{0, 2, 2, -1});
    CHECK(t.vertex(14) == CycNum{0, 0, 0, -1});
    CHECK(t.vertex(15) == t.vertex(1));
}

TEST_CASE("direction word closes with unit edges")
{
    CycNum sum = kZero;
    for (int w : kDirectionWord) sum = sum + unit(w);
    CHECK(sum == kZero);

    const auto& t = prototile();
    for (int i = 1; i <= kEdgeCount; ++i) {
        const CycNum edge = t.vertex(i + 1) - t.vertex(i);
        CHECK(edge == unit(kDirectionWord[static_cast<std::size_t>(i - 1)]));
        CHECK(norm2(edge) == HalfSurd{2, 0});
    }
    // The only straight angle sits at vertex 1, between edges 14 and 1.
    for (std::size_t i = 0; i < kDirectionWord.size(); ++i) {
        const bool straight = mod12(kDirectionWord[(i + 1) % kDirectionWord.size()] - kDirectionWord[i]) == 0;
        CHECK(straight == (i + 1 == kDirectionWord.size()));
    }
}

TEST_CASE("key vertices are distinct")
{
    std::set<CycNum> keys;
    for (int label = 1; label <= 4; ++label) keys.insert(prototile().key_vertex(label));
    CHECK(keys.size() == 4);
}

TEST_CASE("tile area is 3 + 3 sqrt 3")
{
    const HalfSurd a = tile_area();
    CHECK(a == HalfSurd{6, 6});
    CHECK(a.sign() > 0);
    CHECK(std::abs(a.value() - (3 + 3 * std::sqrt(3.0))) < 1e-12);

    // The vertex order runs clockwise: signed shoelace is negative.
    const double shoelace = float_shoelace(reference_columns());
    CHECK(std::abs(std::abs(shoelace) - (3 + 3 * std::sqrt(3.0))) < 1e-12);
    CHECK(shoelace < 0);
    CHECK(prototile_orientation() == -1);

    // Exact oracle on x = (2a + c + b sqrt3)/2, y = (2d + b + c sqrt3)/2,
    // independent of the ring product used by cross().
    std::int64_t rational = 0;
    std::int64_t surd = 0;
    const auto& t = prototile();
    for (int i = 1; i <= kEdgeCount; ++i) {
        const CycNum& u = t.vertex(i);
        const CycNum& v = t.vertex(i + 1);
        const std::int64_t px = 2 * u.a + u.c, qx = u.b, ry = 2 * v.d + v.b, sy = v.c;
        const std::int64_t px2 = 2 * v.a + v.c, qx2 = v.b, ry1 = 2 * u.d + u.b, sy1 = u.c;
        rational += px * ry + 3 * qx * sy - (px2 * ry1 + 3 * qx2 * sy1);
        surd += px * sy + qx * ry - (px2 * sy1 + qx2 * ry1);
    }
    // twice area = (rational + surd sqrt3) / 4
    REQUIRE(rational % 2 == 0);
    REQUIRE(surd % 2 == 0);
    const HalfSurd twice{rational / 2, surd / 2};
    CHECK(twice == twice_signed_area(t.vertices));
    CHECK(twice == HalfSurd{-12, -12});
}

TEST_CASE("seed S0")
{
    const Cluster s = seed_S0();
    CHECK(s.size() == 1);
    CHECK(s.tile(1) == Isometry::identity());
    CHECK(key_rows(s) == std::array<std::uint64_t, 4>{4, 6, 8, 14});
    CHECK(uniform_chirality(s) == false);
}

TEST_CASE("seed M0")
{
    const Cluster m = seed_M0();
    CHECK(m.size() == 2);
    CHECK_FALSE(m.has_keys());
    CHECK(m.tile(2).rot == 11);
    CHECK(m.tile(2).trans == CycNum{0, 1, 0, -2});
    const Vec2 t = to_xy(m.tile(2).trans);
    CHECK(std::abs(t.x - std::sqrt(3.0) / 2) < 1e-12);
    CHECK(std::abs(t.y + 1.5) < 1e-12);

    const EdgeMatch em = edge_match(m);
    CHECK(em.violation_count == 0);
    CHECK(em.interior >= 1); // the two tiles share at least one full edge
}

TEST_CASE("bounding circle covers the prototile")
{
    const auto& bc = prototile_bounding_circle();
    for (const auto& v : prototile().vertices) {
        const Vec2 p = to_xy(v);
        CHECK(std::hypot(p.x - bc.center.x, p.y - bc.center.y) <= bc.radius);
    }
}
