#include "ctorus/endo.hpp"
#include "ctorus/examples.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ctorus;
using ctorus::testing::expect_kind;

namespace {

FieldElement q(const FieldPtr& f, long v) { return FieldElement::from_rational(f, v); }

EndoRing fabricated_ring(const Torus& t, std::vector<IntegerMatrix> mats) {
    EndoRing ring{t, {}, {}};
    for (auto& m : mats) ring.basis.push_back({m, t.analytic_representation(to_rational(m))});
    return ring;
}

// Integer coordinates of an analytic endomorphism in the ring basis.
std::optional<RationalVector> coords_of(const EndoRing& ring, const FieldMatrix& a) {
    auto r = ring.torus.rational_representation(a);
    if (!r) return std::nullopt;
    return ring.coordinates(*r);
}

} // namespace

TEST(EndoRing, Example1IsGaussianIntegers) {
    auto ex = example1(1);
    auto ring = compute_endo_ring(ex.torus);
    ASSERT_EQ(ring.rank(), 2u);
    auto i = FieldElement::generator(ex.torus.field(), "i");
    EXPECT_EQ(ring.basis[0].rational, integer_identity(4));
    const FieldMatrix& a = ring.basis[1].analytic;
    EXPECT_TRUE(a == diagonal({i, -i}) || a == diagonal({-i, i}));
    // second basis element squares to -1
    EXPECT_EQ(ring.structure[1][1], (IntegerVector{-1, 0}));
    EXPECT_EQ(ring.structure[0][0], (IntegerVector{1, 0}));
    EXPECT_EQ(ring.structure[0][1], (IntegerVector{0, 1}));
}

TEST(EndoRing, EveryBasisElementIsAnEndomorphism) {
    for (const Torus& t : {example1(1).torus, example2(1, 2).torus, scalar_cm_product(1)}) {
        auto ring = compute_endo_ring(t);
        for (const auto& e : ring.basis) {
            EXPECT_EQ(e.analytic * t.period(), t.period() * to_field(t.field(), e.rational));
            const FieldMatrix r = to_field(t.field(), e.rational);
            EXPECT_EQ(r * t.complex_structure(), t.complex_structure() * r);
        }
    }
}

TEST(EndoRing, Ranks) {
    EXPECT_EQ(compute_endo_ring(example2(1, 2).torus).rank(), 4u);
    EXPECT_EQ(compute_endo_ring(scalar_cm_product(1)).rank(), 8u);
    EXPECT_EQ(compute_endo_ring(ctorus::testing::generic_torus()).rank(), 1u);
}

TEST(EndoRing, QuaternionRelationsOfExample2) {
    // I = diag(sqrt(-m), -sqrt(-m)), J = [[0, 1 + 2 sqrt(-n)], [-1 + 2 sqrt(-n), 0]] at m = 1, n = 2.
    auto ex = example2(1, 2);
    auto ring = compute_endo_ring(ex.torus);
    const FieldPtr& f = ex.torus.field();
    auto sm = sqrt_negative(f, 1), sn = sqrt_negative(f, 2);
    auto one = q(f, 1), zero = q(f, 0);
    FieldMatrix big_i = diagonal({sm, -sm});
    FieldMatrix big_j(2, 2, {zero, one + q(f, 2) * sn, -one + q(f, 2) * sn, zero});
    EXPECT_EQ(big_i * big_i, scaled(field_identity(f, 2), Rational(-1)));
    EXPECT_EQ(big_j * big_j, scaled(field_identity(f, 2), Rational(-9)));
    EXPECT_EQ(big_i * big_j, scaled(big_j * big_i, Rational(-1)));
    RationalMatrix change(4, 4, Rational(0));
    const FieldMatrix elems[4] = {field_identity(f, 2), big_i, big_j, big_i * big_j};
    for (std::size_t k = 0; k < 4; ++k) {
        auto c = coords_of(ring, elems[k]);
        ASSERT_TRUE(c.has_value());
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_TRUE(is_integer((*c)[j]));
            change(k, j) = (*c)[j];
        }
    }
    EXPECT_EQ(abs(determinant(change)), 1);
}

TEST(StructureConstants, DetectsNonClosedBasis) {
    Torus t = scalar_cm_product(1);
    IntegerMatrix shift = integer_zero(4, 4);
    shift(0, 1) = shift(1, 2) = 1;
    auto ring = fabricated_ring(t, {integer_identity(4), shift});
    expect_kind(ErrorKind::NotClosed, [&] { structure_constants(ring); });
}

TEST(Classify, Examples) {
    auto c1 = classify_algebra(compute_endo_ring(example1(1).torus));
    EXPECT_EQ(c1.tag, AlgebraTag::ImaginaryQuadratic);
    EXPECT_EQ(c1.discriminant_data, (std::vector<Integer>{-1}));
    auto c2 = classify_algebra(compute_endo_ring(example2(1, 2).torus));
    EXPECT_EQ(c2.tag, AlgebraTag::DefiniteQuaternion);
    EXPECT_EQ(c2.center_dimension, 1u);
    auto c3 = classify_algebra(compute_endo_ring(example2(2, 3).torus));
    EXPECT_EQ(c3.tag, AlgebraTag::DefiniteQuaternion);
    auto c4 = classify_algebra(compute_endo_ring(scalar_cm_product(2)));
    EXPECT_EQ(c4.tag, AlgebraTag::MatrixAlgebraOverQuadratic);
    EXPECT_EQ(c4.discriminant_data, (std::vector<Integer>{-2}));
}

TEST(Classify, RationalAndRealQuadratic) {
    EXPECT_EQ(classify_algebra(compute_endo_ring(ctorus::testing::generic_torus())).tag, AlgebraTag::RationalField);
    auto c = classify_algebra(compute_endo_ring(random_torus_with_sqrt_d(3, 2).torus));
    EXPECT_EQ(c.tag, AlgebraTag::RealQuadratic);
    EXPECT_EQ(c.discriminant_data, (std::vector<Integer>{3}));
}

TEST(Classify, CMFieldAndSplitProduct) {
    auto cm = classify_algebra(compute_endo_ring(ctorus::testing::zeta5_torus()));
    EXPECT_EQ(cm.tag, AlgebraTag::CMField);
    EXPECT_EQ(cm.discriminant_data, (std::vector<Integer>{5}));
    auto split = classify_algebra(compute_endo_ring(ctorus::testing::split_cm_torus()));
    EXPECT_EQ(split.tag, AlgebraTag::Other);
    EXPECT_EQ(split.center_dimension, 4u);
}

TEST(Classify, TraceZeroElementsSquareNegative) {
    // Independent check from the matrices: a nonzero trace-zero x squares to a negative scalar.
    auto ring = compute_endo_ring(example2(2, 3).torus);
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const RationalMatrix x = ring.combination({0, a, b, c});
                Rational tr = 0;
                for (std::size_t k = 0; k < 4; ++k) tr += x(k, k);
                const RationalMatrix x0 = x - scaled(rational_identity(4), tr / 4);
                const RationalMatrix sq = x0 * x0;
                EXPECT_EQ(sq, scaled(rational_identity(4), sq(0, 0)));
                EXPECT_LT(sq(0, 0), 0);
            }
}

TEST(Classify, RejectsEmptyRing) {
    EndoRing ring{scalar_cm_product(1), {}, {}};
    expect_kind(ErrorKind::UnrecognizedStructure, [&] { classify_algebra(ring); });
}

TEST(Rosati, ConjugateTransposeOnGaussianSquare) {
    Torus t = scalar_cm_product(1);
    auto ring = compute_endo_ring(t);
    auto ros = rosati_involution(ring, field_identity(t.field(), 2));
    for (std::size_t j = 0; j < ring.rank(); ++j) {
        RationalVector col(ring.rank(), Rational(0));
        for (std::size_t i = 0; i < ring.rank(); ++i) col[i] = ros.involution(i, j);
        EXPECT_EQ(t.analytic_representation(ring.combination(col)), conjugate_transpose(ring.basis[j].analytic));
    }
    EXPECT_EQ(ros.involution(0, 0), 1);
    // Lattice-side formula R' = E0^-1 R^t E0 with E0 = Im H0 on the generators.
    RationalMatrix e0 = rational_zero(4, 4);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) {
            const auto x = t.lattice_vector(k), y = t.lattice_vector(l);
            e0(k, l) = imaginary_part(x[0] * conjugate(y[0]) + x[1] * conjugate(y[1])).rational_value();
        }
    for (std::size_t j = 0; j < ring.rank(); ++j) {
        RationalVector col(ring.rank(), Rational(0));
        for (std::size_t i = 0; i < ring.rank(); ++i) col[i] = ros.involution(i, j);
        const RationalMatrix r = to_rational(ring.basis[j].rational);
        EXPECT_EQ(ring.combination(col), inverse(e0) * r.transposed() * e0);
    }
}

TEST(Rosati, RejectsNonPolarization) {
    auto ex = example2(1, 2);
    auto ring = compute_endo_ring(ex.torus);
    expect_kind(ErrorKind::NotPolarization, [&] { rosati_involution(ring, field_identity(ex.torus.field(), 2)); });
    Torus t = scalar_cm_product(1);
    auto sring = compute_endo_ring(t);
    expect_kind(ErrorKind::NotPolarization,
                [&] { rosati_involution(sring, diagonal({q(t.field(), 1), q(t.field(), -1)})); });
}

TEST(Symmetric, GaussianSquareWithConjugateDiagonal) {
    Torus t = scalar_cm_product(1);
    auto ring = compute_endo_ring(t);
    auto i = FieldElement::generator(t.field(), "i");
    auto mult = attach_multiplication(t, diagonal({i, -i}), -1);
    EXPECT_FALSE(mult.is_scalar);
    auto sym = symmetric_subspace(rosati_involution(ring, field_identity(t.field(), 2)));
    EXPECT_GE(sym.dimension, 3u);
    EXPECT_EQ(sym.dimension, 4u);  // hermitian 2x2 matrices over Q(i)
}

TEST(Symmetric, RankOneRing) {
    Torus t = ctorus::testing::generic_torus();
    auto ring = compute_endo_ring(t);
    RosatiData ros{field_identity(t.field(), 2), rational_identity(1)};
    EXPECT_EQ(symmetric_subspace(ros).dimension, 1u);
    expect_kind(ErrorKind::NoSuchElement, [&] { find_real_multiplication(ring, ros); });
}

TEST(RealMultiplication, GaussianSquare) {
    Torus t = scalar_cm_product(1);
    auto ring = compute_endo_ring(t);
    auto ros = rosati_involution(ring, field_identity(t.field(), 2));
    auto rm = find_real_multiplication(ring, ros);
    EXPECT_GT(rm.d_prime, 1);
    EXPECT_FALSE(is_perfect_square(rm.d_prime));
    EXPECT_EQ(rm.beta.rational * rm.beta.rational, scaled(integer_identity(4), rm.d_double_prime));
    EXPECT_EQ(rm.beta.analytic * rm.beta.analytic, scaled(field_identity(t.field(), 2), Rational(rm.d_double_prime)));
    EXPECT_TRUE(is_perfect_square(Integer(rm.d_double_prime / rm.d_prime)));
    EXPECT_EQ(rm.d_double_prime % rm.d_prime, 0);
    // beta is Rosati-symmetric
    EXPECT_EQ(conjugate_transpose(rm.beta.analytic), rm.beta.analytic);
}

TEST(RealMultiplication, AlreadySquareRootOfTwo) {
    auto built = random_torus_with_sqrt_d(2, 1);
    auto ring = compute_endo_ring(built.torus);
    ASSERT_EQ(ring.rank(), 2u);
    // The ring is commutative, so the identity map is an anti-automorphism.
    RosatiData ros{field_identity(built.torus.field(), 2), rational_identity(2)};
    auto rm = find_real_multiplication(ring, ros);
    EXPECT_EQ(rm.d_prime, 2);
    EXPECT_EQ(rm.d_double_prime, 2);
    EXPECT_TRUE(rm.beta.rational == ring.basis[1].rational ||
                rm.beta.rational == scaled(ring.basis[1].rational, Integer(-1)));
}

TEST(BoxOracle, ContainsIdentity) {
    auto list = endo_box_oracle(ctorus::testing::generic_torus(), 1);
    ASSERT_EQ(list.size(), 3u);
    EXPECT_NE(std::find(list.begin(), list.end(), integer_identity(4)), list.end());
}

TEST(BoxOracle, Example1NineElements) {
    auto ex = example1(1);
    auto ring = compute_endo_ring(ex.torus);
    auto list = endo_box_oracle(ex.torus, 1);
    EXPECT_EQ(list.size(), 9u);
    for (long n1 = -1; n1 <= 1; ++n1)
        for (long n2 = -1; n2 <= 1; ++n2) {
            const IntegerMatrix r = to_integer(ring.combination({n1, n2}));
            EXPECT_NE(std::find(list.begin(), list.end(), r), list.end());
        }
    EXPECT_EQ(list, ring_box_elements(ring, 1));
}

TEST(BoxOracle, ScalarCaseMatchesRing) {
    Torus t = scalar_cm_product(1);
    EXPECT_EQ(endo_box_oracle(t, 1), ring_box_elements(compute_endo_ring(t), 1));
}

TEST(BoxOracle, BoundTooLarge) {
    expect_kind(ErrorKind::BoundTooLarge, [] { endo_box_oracle(scalar_cm_product(1), 5); });
}
