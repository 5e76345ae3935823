#pragma once

#include "ctorus/torus.hpp"

#include <cstdint>

namespace ctorus {

struct TorusWithMultiplication {
    Torus torus;
    MultiplicationDatum mult;
};

/// sqrt(-m) inside `field`, as a rational multiple of i or of the generator "sqrtm<m0>".
FieldElement sqrt_negative(const FieldPtr& field, const Integer& m);

/// Generators needed to express sqrt(-m) for each m: "sqrtm<m0>" with m0 the squarefree part, skipping m0 = 1.
std::vector<GeneratorSpec> imaginary_square_root_generators(const std::vector<Integer>& ms);

/// Lattice spanned by (1,1), (1+ri, ri), (sqrt(-m), -sqrt(-m)), (sqrt(-m)(1+ri), -sqrt(-m) ri), with
/// D = diag(sqrt(-m), -sqrt(-m)). Screens r^2, r sqrt(m), 1 for small integer relations.
TorusWithMultiplication example1(const Integer& m, const GeneratorSpec& r_spec);
TorusWithMultiplication example1(const Integer& m, const Rational& r);
/// Default r: the real cube root of 2.
TorusWithMultiplication example1(const Integer& m);

/// Lattice spanned by (1,1), (1+sqrt(-n), sqrt(-n)), (sqrt(-m), -sqrt(-m)), (sqrt(-m)(1+sqrt(-n)), -sqrt(-m) sqrt(-n))
/// with D = diag(sqrt(-m), -sqrt(-m)); requires mn nonsquare.
TorusWithMultiplication example2(const Integer& m, const Integer& n);

/// (Z + Z sqrt(-m))^2.
Torus scalar_cm_product(const Integer& m);

/// Lattice Z e1 + Z e2 + Z D e1 + Z D e2 with random e1, e2 over Q(i, sqrt|d|, sqrt p).
TorusWithMultiplication random_torus_with_sqrt_d(const Integer& d, std::uint64_t seed);

} // namespace ctorus
