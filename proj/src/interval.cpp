#include "ctorus/interval.hpp"

#include "ctorus/error.hpp"

#include <algorithm>
#include <array>

namespace ctorus {

Interval outward(const Interval& a, unsigned long bits) { return {round_down(a.lo, bits), round_up(a.hi, bits)}; }

Interval add(const Interval& a, const Interval& b, unsigned long bits) {
    return outward({a.lo + b.lo, a.hi + b.hi}, bits);
}

Interval sub(const Interval& a, const Interval& b, unsigned long bits) {
    return outward({a.lo - b.hi, a.hi - b.lo}, bits);
}

Interval mul_exact(const Interval& a, const Interval& b) {
    if (a.lo == a.hi && b.lo == b.hi) return Interval::point(a.lo * b.lo);
    std::array<Rational, 4> p{a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p.begin(), p.end()), *std::max_element(p.begin(), p.end())};
}

Interval mul(const Interval& a, const Interval& b, unsigned long bits) { return outward(mul_exact(a, b), bits); }

Interval scale(const Interval& a, const Rational& s, unsigned long bits) {
    if (s >= 0) return outward({a.lo * s, a.hi * s}, bits);
    return outward({a.hi * s, a.lo * s}, bits);
}

Interval div_exact(const Interval& a, const Interval& b) {
    if (b.contains_zero()) fail(ErrorKind::DivisionByZero, "interval divisor contains zero");
    return mul_exact(a, {1 / b.hi, 1 / b.lo});
}

bool ComplexBox::overlaps(const ComplexBox& o) const {
    return re.lo <= o.re.hi && o.re.lo <= re.hi && im.lo <= o.im.hi && o.im.lo <= im.hi;
}

ComplexBox add(const ComplexBox& a, const ComplexBox& b, unsigned long bits) {
    return {add(a.re, b.re, bits), add(a.im, b.im, bits)};
}

ComplexBox mul(const ComplexBox& a, const ComplexBox& b, unsigned long bits) {
    const Interval rr = mul_exact(a.re, b.re), ii = mul_exact(a.im, b.im);
    const Interval ri = mul_exact(a.re, b.im), ir = mul_exact(a.im, b.re);
    return {outward({rr.lo - ii.hi, rr.hi - ii.lo}, bits), outward({ri.lo + ir.lo, ri.hi + ir.hi}, bits)};
}

ComplexBox scale(const ComplexBox& a, const Rational& s, unsigned long bits) {
    return {scale(a.re, s, bits), scale(a.im, s, bits)};
}

} // namespace ctorus
