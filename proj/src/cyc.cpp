#include "monotile/cyc.hpp"

#include <ostream>

namespace monotile {

CycNum operator*(const CycNum& p, const CycNum& q)
{
    // Horner in zeta: ((d*q*zeta + c*q)*zeta + b*q)*zeta + a*q.
    CycNum acc = scale(q, p.d);
    acc = mul_zeta(acc) + scale(q, p.c);
    acc = mul_zeta(acc) + scale(q, p.b);
    acc = mul_zeta(acc) + scale(q, p.a);
    return acc;
}

int HalfSurd::sign() const
{
    const auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
    if (s == 0) return sgn(r);
    if (r == 0) return sgn(s);
    if (sgn(r) == sgn(s)) return sgn(r);
    const __int128 rr = static_cast<__int128>(r) * r;
    const __int128 ss = static_cast<__int128>(s) * s * 3;
    if (rr == ss) return 0; // unreachable for integers, sqrt(3) is irrational
    return rr > ss ? sgn(r) : sgn(s);
}

Isometry inverse(const Isometry& iso)
{
    const Isometry linear{kZero, static_cast<std::int8_t>(mod12(iso.reflect ? iso.rot : -iso.rot)),
                          iso.reflect};
    return {-apply(linear, iso.trans), linear.rot, linear.reflect};
}

std::ostream& operator<<(std::ostream& os, const CycNum& p)
{
    return os << '(' << p.a << ',' << p.b << ',' << p.c << ',' << p.d << ')';
}

std::ostream& operator<<(std::ostream& os, const Isometry& iso)
{
    return os << "{reflect:" << (iso.reflect ? "true" : "false") << ", rot:" << int(iso.rot)
              << ", trans:" << iso.trans << '}';
}

} // namespace monotile
