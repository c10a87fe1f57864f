#pragma once

// Exact points and rigid motions in the ring Z[zeta], zeta = exp(i*pi/6).
//
// A point is stored as integer coordinates over the basis {1, zeta, zeta^2,
// zeta^3}. Since zeta^4 = zeta^2 - 1, every element of the ring has exactly one
// such representation, so equality of points is equality of quadruples.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>

namespace monotile {

/// Thrown whenever a ring operation would leave the int64 range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

namespace checked {

inline std::int64_t add(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw OverflowError("integer overflow in add");
    return r;
}

inline std::int64_t sub(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("integer overflow in sub");
    return r;
}

inline std::int64_t mul(std::int64_t x, std::int64_t y)
{
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("integer overflow in mul");
    return r;
}

inline std::int64_t neg(std::int64_t x) { return sub(0, x); }

} // namespace checked

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// a + b*zeta + c*zeta^2 + d*zeta^3.
struct CycNum {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;

    friend constexpr bool operator==(const CycNum&, const CycNum&) = default;
    friend constexpr auto operator<=>(const CycNum&, const CycNum&) = default;
};

inline constexpr CycNum kZero{0, 0, 0, 0};
inline constexpr CycNum kOne{1, 0, 0, 0};

inline CycNum operator+(const CycNum& p, const CycNum& q)
{
    return {checked::add(p.a, q.a), checked::add(p.b, q.b), checked::add(p.c, q.c),
            checked::add(p.d, q.d)};
}

inline CycNum operator-(const CycNum& p, const CycNum& q)
{
    return {checked::sub(p.a, q.a), checked::sub(p.b, q.b), checked::sub(p.c, q.c),
            checked::sub(p.d, q.d)};
}

inline CycNum operator-(const CycNum& p)
{
    return {checked::neg(p.a), checked::neg(p.b), checked::neg(p.c), checked::neg(p.d)};
}

inline CycNum add(const CycNum& p, const CycNum& q) { return p + q; }
inline CycNum sub(const CycNum& p, const CycNum& q) { return p - q; }
inline CycNum neg(const CycNum& p) { return -p; }

/// Multiplication by an integer scalar.
inline CycNum scale(const CycNum& p, std::int64_t s)
{
    return {checked::mul(p.a, s), checked::mul(p.b, s), checked::mul(p.c, s),
            checked::mul(p.d, s)};
}

/// zeta * p.
inline CycNum mul_zeta(const CycNum& p)
{
    return {checked::neg(p.d), p.a, checked::add(p.b, p.d), p.c};
}

inline constexpr int mod12(int k)
{
    const int r = k % 12;
    return r < 0 ? r + 12 : r;
}

/// zeta^k * p, k taken mod 12.
inline CycNum rot_pow(CycNum p, int k)
{
    for (int i = mod12(k); i > 0; --i) p = mul_zeta(p);
    return p;
}

/// The unit vector at angle 30*k degrees.
inline CycNum unit(int k) { return rot_pow(kOne, k); }

/// Reflection (x, y) -> (-x, y); equals -conj(p).
inline CycNum mirror_x(const CycNum& p)
{
    return {checked::neg(checked::add(p.a, p.c)), checked::neg(p.b), p.c, checked::add(p.b, p.d)};
}

/// Complex conjugate (x, y) -> (x, -y).
inline CycNum conj(const CycNum& p) { return -mirror_x(p); }

/// Ring product.
CycNum operator*(const CycNum& p, const CycNum& q);

inline constexpr double kSqrt3 = 1.7320508075688772935;

inline Vec2 to_xy(const CycNum& p)
{
    const auto a = static_cast<double>(p.a);
    const auto b = static_cast<double>(p.b);
    const auto c = static_cast<double>(p.c);
    const auto d = static_cast<double>(p.d);
    return {a + (kSqrt3 * b + c) / 2.0, (b + kSqrt3 * c) / 2.0 + d};
}

std::ostream& operator<<(std::ostream& os, const CycNum& p);

/// Exact real number (r + s*sqrt(3)) / 2. Real elements of the ring, and
/// twice-areas of lattice polygons, live here.
struct HalfSurd {
    std::int64_t r = 0;
    std::int64_t s = 0;

    friend constexpr bool operator==(const HalfSurd&, const HalfSurd&) = default;

    HalfSurd& operator+=(const HalfSurd& o)
    {
        r = checked::add(r, o.r);
        s = checked::add(s, o.s);
        return *this;
    }
    friend HalfSurd operator+(HalfSurd x, const HalfSurd& y) { return x += y; }
    friend HalfSurd operator-(const HalfSurd& x, const HalfSurd& y)
    {
        return {checked::sub(x.r, y.r), checked::sub(x.s, y.s)};
    }
    friend HalfSurd operator*(const HalfSurd& x, std::int64_t k)
    {
        return {checked::mul(x.r, k), checked::mul(x.s, k)};
    }

    double value() const { return (static_cast<double>(r) + kSqrt3 * static_cast<double>(s)) / 2.0; }
    int sign() const;
};

/// Real part of p as an exact surd.
inline HalfSurd real_part(const CycNum& p)
{
    return {checked::add(checked::mul(p.a, 2), p.c), p.b};
}

/// |p|^2, exact.
inline HalfSurd norm2(const CycNum& p) { return real_part(p * conj(p)); }

/// Im(conj(p) * q), the 2D cross product p x q, exact.
inline HalfSurd cross(const CycNum& p, const CycNum& q)
{
    // Im(w) = Re(-i * w), and -i = zeta^9.
    return real_part(rot_pow(conj(p) * q, 9));
}

/// Rigid motion p -> zeta^rot * (reflect ? mirror_x(p) : p) + trans.
struct Isometry {
    CycNum trans{};
    std::int8_t rot = 0;
    bool reflect = false;

    friend constexpr bool operator==(const Isometry&, const Isometry&) = default;
    friend constexpr auto operator<=>(const Isometry&, const Isometry&) = default;

    static Isometry identity() { return {}; }
    static Isometry translation(const CycNum& t) { return {t, 0, false}; }
    static Isometry rotation(int k) { return {kZero, static_cast<std::int8_t>(mod12(k)), false}; }
    static Isometry mirror() { return {kZero, 0, true}; }
};

inline CycNum apply(const Isometry& iso, const CycNum& p)
{
    return rot_pow(iso.reflect ? mirror_x(p) : p, iso.rot) + iso.trans;
}

/// outer after inner: apply(compose(f, g), p) == apply(f, apply(g, p)).
inline Isometry compose(const Isometry& outer, const Isometry& inner)
{
    const int rot = outer.reflect ? outer.rot - inner.rot : outer.rot + inner.rot;
    return {apply(outer, inner.trans), static_cast<std::int8_t>(mod12(rot)),
            outer.reflect != inner.reflect};
}

Isometry inverse(const Isometry& iso);

std::ostream& operator<<(std::ostream& os, const Isometry& iso);

} // namespace monotile
