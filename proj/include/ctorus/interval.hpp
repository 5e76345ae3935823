#pragma once

#include "ctorus/rational.hpp"

namespace ctorus {

/// Closed rational interval. Every operation taking `bits` rounds its endpoints
/// outward to the dyadic grid 2^-bits, so results stay sound enclosures.
struct Interval {
    Rational lo;
    Rational hi;

    static Interval point(const Rational& x) { return {x, x}; }

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
};

Interval add(const Interval& a, const Interval& b, unsigned long bits);
Interval sub(const Interval& a, const Interval& b, unsigned long bits);
Interval mul(const Interval& a, const Interval& b, unsigned long bits);
Interval scale(const Interval& a, const Rational& s, unsigned long bits);
/// Exact interval product, no rounding.
Interval mul_exact(const Interval& a, const Interval& b);
/// Requires 0 outside b.
Interval div_exact(const Interval& a, const Interval& b);
Interval outward(const Interval& a, unsigned long bits);

/// Axis-aligned complex enclosure [re_lo, re_hi] + i [im_lo, im_hi].
struct ComplexBox {
    Interval re;
    Interval im;

    static ComplexBox point(const Rational& re, const Rational& im = 0) {
        return {Interval::point(re), Interval::point(im)};
    }

    Rational width() const { return re.width() > im.width() ? re.width() : im.width(); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool overlaps(const ComplexBox& other) const;
};

ComplexBox add(const ComplexBox& a, const ComplexBox& b, unsigned long bits);
ComplexBox mul(const ComplexBox& a, const ComplexBox& b, unsigned long bits);
ComplexBox scale(const ComplexBox& a, const Rational& s, unsigned long bits);

} // namespace ctorus
