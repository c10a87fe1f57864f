#include "monotile/cyc.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

using namespace monotile;

namespace {

using cplx = std::complex<double>;

// Independent float evaluation of a + b z + c z^2 + d z^3 with z = exp(i pi/6).
cplx as_complex(const CycNum& p)
{
    const cplx z = std::polar(1.0, M_PI / 6);
    return double(p.a) + double(p.b) * z + double(p.c) * z * z + double(p.d) * z * z * z;
}

void check_xy(const CycNum& p, double x, double y, double tol = 1e-12)
{
    const Vec2 v = to_xy(p);
    CHECK(std::abs(v.x - x) <= tol);
    CHECK(std::abs(v.y - y) <= tol);
}

CycNum random_point(std::mt19937_64& rng, int range = 50)
{
    std::uniform_int_distribution<int> d(-range, range);
    return {d(rng), d(rng), d(rng), d(rng)};
}

Isometry random_isometry(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> r(0, 11);
    std::bernoulli_distribution f(0.5);
    return {random_point(rng), static_cast<std::int8_t>(r(rng)), f(rng)};
}

cplx apply_float(const Isometry& iso, cplx p)
{
    if (iso.reflect) p = {-p.real(), p.imag()};
    return std::polar(1.0, iso.rot * M_PI / 6) * p + as_complex(iso.trans);
}

} // namespace

TEST_CASE("add, sub and neg are componentwise")
{
    CHECK(add({0, 0, 0, 1}, {0, 1, 0, 1}) == CycNum{0, 1, 0, 2});
    const CycNum p{3, -7, 11, 2};
    CHECK(sub(p, p) == kZero);
    CHECK(add(p, neg(p)) == kZero);
}

TEST_CASE("overflow is reported, not wrapped")
{
    const auto big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS((CycNum{big, 0, 0, 0} + kOne), OverflowError);
    CHECK_THROWS_AS((-CycNum{std::numeric_limits<std::int64_t>::min(), 0, 0, 0}), OverflowError);
    CHECK_THROWS_AS((mul_zeta(CycNum{0, big, 0, 1})), OverflowError);
    CHECK_THROWS_AS((scale(CycNum{0, 0, big / 2 + 1, 0}, 2)), OverflowError);
}

TEST_CASE("rot_pow")
{
    CHECK(rot_pow({1, 0, 0, 0}, 3) == CycNum{0, 0, 0, 1});
    CHECK(rot_pow({0, 0, 0, 1}, 1) == CycNum{-1, 0, 1, 0});
    CHECK(rot_pow({0, 1, 0, -2}, 12) == CycNum{0, 1, 0, -2});
    CHECK(rot_pow({0, 1, 0, -2}, -1) == rot_pow({0, 1, 0, -2}, 11));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const CycNum p = random_point(rng);
        for (int k = 0; k < 12; ++k) {
            CHECK(rot_pow(rot_pow(p, k), 12 - k) == p);
            const cplx want = std::polar(1.0, k * M_PI / 6) * as_complex(p);
            CHECK(std::abs(as_complex(rot_pow(p, k)) - want) < 1e-9);
        }
    }
}

TEST_CASE("the twelve rotations form a cyclic group of order 12")
{
    for (int k = 1; k < 12; ++k) CHECK(unit(k) != kOne);
    CHECK(unit(12) == kOne);
    for (int j = 0; j < 12; ++j)
        for (int k = 0; k < 12; ++k) CHECK(unit(j) * unit(k) == unit(j + k));
}

TEST_CASE("mirror_x")
{
    CHECK(mirror_x({1, 0, 0, 0}) == CycNum{-1, 0, 0, 0});
    CHECK(mirror_x({0, 0, 1, 0}) == CycNum{-1, 0, 1, 0});
    CHECK(mirror_x({0, 0, 0, 1}) == CycNum{0, 0, 0, 1});

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const CycNum p = random_point(rng);
        CHECK(mirror_x(mirror_x(p)) == p);
        const cplx z = as_complex(p);
        CHECK(std::abs(as_complex(mirror_x(p)) - cplx(-z.real(), z.imag())) < 1e-9);
        for (int k = 0; k < 12; ++k) CHECK(mirror_x(rot_pow(mirror_x(p), k)) == rot_pow(p, -k));
    }
}

TEST_CASE("distinct quadruples are distinct points")
{
    std::vector<CycNum> pts;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d) pts.push_back({a, b, c, d});
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Vec2 p = to_xy(pts[i]);
            const Vec2 q = to_xy(pts[j]);
            REQUIRE(std::hypot(p.x - q.x, p.y - q.y) > 1e-12);
        }
}

TEST_CASE("to_xy")
{
    check_xy({0, 0, 0, 1}, 0.0, 1.0);
    check_xy({0, 1, 0, -2}, std::sqrt(3.0) / 2, -1.5);
    // cos30 + cos120, 1 + sin30 + sin120
    const double c = std::cos(30 * M_PI / 180) + std::cos(120 * M_PI / 180);
    const double s = 1 + std::sin(30 * M_PI / 180) + std::sin(120 * M_PI / 180);
    check_xy({-1, 1, 1, 1}, c, s);
}

TEST_CASE("ring product and exact quadratic quantities")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const CycNum p = random_point(rng, 30);
        const CycNum q = random_point(rng, 30);
        CHECK(std::abs(as_complex(p * q) - as_complex(p) * as_complex(q)) < 1e-7);
        CHECK(p * q == q * p);
        const cplx zp = as_complex(p);
        const cplx zq = as_complex(q);
        CHECK(std::abs(norm2(p).value() - std::norm(zp)) < 1e-7);
        CHECK(std::abs(cross(p, q).value() - (zp.real() * zq.imag() - zp.imag() * zq.real())) < 1e-7);
        CHECK(conj(conj(p)) == p);
    }
    CHECK(norm2(kOne) == HalfSurd{2, 0});
    for (int k = 0; k < 12; ++k) CHECK(norm2(unit(k)) == HalfSurd{2, 0});
}

TEST_CASE("HalfSurd sign is exact")
{
    CHECK(HalfSurd{6, 6}.sign() == 1);
    CHECK(HalfSurd{-6, -6}.sign() == -1);
    CHECK(HalfSurd{0, 0}.sign() == 0);
    CHECK(HalfSurd{2, -1}.sign() == 1);  // 2 > sqrt 3
    CHECK(HalfSurd{1, -1}.sign() == -1); // 1 < sqrt 3
    CHECK(HalfSurd{-97, 56}.sign() == -1); // 56 sqrt 3 = 96.9948...
    CHECK(HalfSurd{-96, 56}.sign() == 1);
}

TEST_CASE("apply and compose")
{
    const Isometry second{CycNum{0, 1, 0, -2}, 11, false};
    CHECK(apply(second, kZero) == CycNum{0, 1, 0, -2});

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Isometry f = random_isometry(rng);
        const Isometry g = random_isometry(rng);
        const CycNum p = random_point(rng);
        CHECK(compose(Isometry::identity(), g) == g);
        CHECK(compose(g, Isometry::identity()) == g);
        CHECK(apply(Isometry::identity(), p) == p);
        CHECK(apply(compose(f, g), p) == apply(f, apply(g, p)));
        CHECK(apply(inverse(f), apply(f, p)) == p);
        CHECK(std::abs(as_complex(apply(f, p)) - apply_float(f, as_complex(p))) < 1e-9);
    }
}

TEST_CASE("isometries preserve exact squared distances")
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const Isometry f = random_isometry(rng);
        const CycNum p = random_point(rng);
        const CycNum q = random_point(rng);
        CHECK(norm2(apply(f, p) - apply(f, q)) == norm2(p - q));
    }
}

TEST_CASE("exact and float evaluation agree along random operation chains")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> op(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        CycNum p = random_point(rng, 5);
        cplx z = as_complex(p);
        for (int s = 0; s < 40; ++s) {
            switch (op(rng)) {
            case 0: {
                const CycNum q = random_point(rng, 5);
                p = p + q;
                z += as_complex(q);
                break;
            }
            case 1: {
                const int k = static_cast<int>(rng() % 12);
                p = rot_pow(p, k);
                z *= std::polar(1.0, k * M_PI / 6);
                break;
            }
            case 2:
                p = mirror_x(p);
                z = {-z.real(), z.imag()};
                break;
            default: {
                const Isometry f = random_isometry(rng);
                p = apply(f, p);
                z = apply_float(f, z);
            }
            }
        }
        const Vec2 v = to_xy(p);
        CHECK(std::abs(v.x - z.real()) < 1e-9);
        CHECK(std::abs(v.y - z.imag()) < 1e-9);
    }
}
