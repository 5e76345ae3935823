#pragma once

#include "ctorus/error.hpp"
#include "ctorus/torus.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <string>

namespace ctorus::testing {

inline void expect_kind(ErrorKind kind, const std::function<void()>& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << error_kind_name(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

// Real cube root of n inside [lo, hi].
inline GeneratorSpec cube_root(const std::string& name, long n, const Rational& lo, const Rational& hi) {
    return GeneratorSpec{name, RationalPolynomial{{Rational(-n), 0, 0, 1}}, ComplexBox{Interval{lo, hi}, Interval{0, 0}},
                         ConjKind::Real};
}

// Generic lattice over Q(i, a) with a the real root of x^5 - x - 1.
inline Torus generic_torus() {
    GeneratorSpec a{"a", RationalPolynomial{{-1, -1, 0, 0, 0, 1}},
                    ComplexBox{Interval{make_rational(116, 100), make_rational(117, 100)}, Interval{0, 0}},
                    ConjKind::Real};
    auto f = NumberField::create({a});
    auto i = FieldElement::generator(f, "i");
    auto x = FieldElement::generator(f, "a");
    auto one = FieldElement::one(f), zero = FieldElement::zero(f);
    return build_torus(FieldMatrix(2, 4, {one, zero, x, i * x * x + x * x * x * x,
                                          zero, one, i * x * x * x + one, x + i}));
}

// Lattice of Q(zeta_5) under the CM type {zeta -> zeta, zeta -> zeta^2}; w = 4 sin(72 degrees).
inline Torus zeta5_torus() {
    GeneratorSpec w{"w", RationalPolynomial{{80, 0, -20, 0, 1}},
                    ComplexBox{Interval{make_rational(38, 10), make_rational(381, 100)}, Interval{0, 0}},
                    ConjKind::Real};
    auto g = NumberField::create({w});
    auto i = FieldElement::generator(g, "i");
    auto wv = FieldElement::generator(g, "w");
    auto one = FieldElement::one(g);
    auto sqrt5 = (wv * wv - FieldElement::from_rational(g, 10)) * Rational(1, 2);
    auto z = (sqrt5 - one) * Rational(1, 4) + i * wv * Rational(1, 4);
    auto z2 = z * z, z3 = z2 * z, z4 = z3 * z;
    return build_torus(FieldMatrix(2, 4, {one, z, z2, z3, one, z2, z4, z}));
}

// E_i x E_sqrt(-2): two non-isogenous CM elliptic curves.
inline Torus split_cm_torus() {
    auto h = NumberField::create({GeneratorSpec::square_root("s", -2)});
    auto i = FieldElement::generator(h, "i"), s = FieldElement::generator(h, "s");
    auto one = FieldElement::one(h), zero = FieldElement::zero(h);
    return build_torus(FieldMatrix(2, 4, {one, i, zero, zero, zero, zero, one, s}));
}

} // namespace ctorus::testing
