#include "ctorus/torus.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ctorus;
using ctorus::testing::expect_kind;

namespace {

FieldElement q(const FieldPtr& f, long v) { return FieldElement::from_rational(f, v); }

// Example 1 lattice for m = 1, r = cube root of 2.
FieldMatrix example1_m1() {
    auto f = NumberField::create({GeneratorSpec::real_root("r", 3, 2)});
    auto i = FieldElement::generator(f, "i");
    auto r = FieldElement::generator(f, "r");
    auto one = q(f, 1);
    return FieldMatrix(2, 4, {one, one + r * i, i, i * (one + r * i),
                              one, r * i, -i, -i * r * i});
}

} // namespace

TEST(Torus, SquareOfGaussianCurve) {
    auto f = NumberField::create({});
    auto i = FieldElement::generator(f, "i");
    auto zero = q(f, 0), one = q(f, 1);
    Torus t = build_torus(FieldMatrix(2, 4, {one, i, zero, zero, zero, zero, one, i}));
    const auto& j = t.complex_structure();
    EXPECT_TRUE(is_real(j));
    EXPECT_EQ(j * j, scaled(field_identity(f, 4), Rational(-1)));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if ((r < 2) != (c < 2)) EXPECT_TRUE(j(r, c).is_zero());
    // Multiplication by i sends lambda_1 = e_1 to lambda_2 = i e_1.
    EXPECT_EQ(j(1, 0), q(f, 1));
    EXPECT_EQ(j(0, 0), q(f, 0));
}

TEST(Torus, Example1IsNondegenerate) {
    Torus t = build_torus(example1_m1());
    EXPECT_FALSE(t.big_period_determinant().is_zero());
    EXPECT_EQ(exact_sign(t.big_period_determinant() * conjugate(t.big_period_determinant())), 1);
}

TEST(Torus, RepeatedColumnIsDegenerate) {
    auto f = NumberField::create({});
    auto i = FieldElement::generator(f, "i");
    auto zero = q(f, 0), one = q(f, 1);
    expect_kind(ErrorKind::DegenerateLattice,
                [&] { build_torus(FieldMatrix(2, 4, {one, i, one, zero, zero, zero, zero, i})); });
}

TEST(Torus, AnalyticAndRationalRepresentationsAgree) {
    Torus t = build_torus(example1_m1());
    const auto& f = t.field();
    auto i = FieldElement::generator(f, "i");
    FieldMatrix d = diagonal({i, -i});
    auto r = t.rational_representation(d);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(t.analytic_representation(*r), d);
    EXPECT_EQ(d * t.period(), t.period() * to_field(f, *r));
    auto coords = t.lattice_coordinates(t.lattice_vector(2));
    ASSERT_TRUE(coords.has_value());
    EXPECT_EQ(*coords, (RationalVector{0, 0, 1, 0}));
}

TEST(Multiplication, Example1ConjugateDiagonal) {
    Torus t = build_torus(example1_m1());
    auto i = FieldElement::generator(t.field(), "i");
    auto m = attach_multiplication(t, diagonal({i, -i}), -1);
    EXPECT_FALSE(m.is_scalar);
    EXPECT_EQ(m.epsilon, -1);
    EXPECT_EQ(m.sqrt_d, i);
    const auto rr = m.rational_rep * m.rational_rep;
    EXPECT_EQ(rr, scaled(integer_identity(4), Integer(-1)));
    ASSERT_TRUE(m.diagonalizer.has_value());
    EXPECT_EQ(inverse(*m.diagonalizer) * m.d_analytic * *m.diagonalizer, diagonal({i, -i}));
    EXPECT_EQ((*m.diagonalizer)(0, 0), q(t.field(), 1));
}

TEST(Multiplication, ScalarGaussian) {
    auto f = NumberField::create({});
    auto i = FieldElement::generator(f, "i");
    auto zero = q(f, 0), one = q(f, 1);
    Torus t = build_torus(FieldMatrix(2, 4, {one, i, zero, zero, zero, zero, one, i}));
    auto m = attach_multiplication(t, diagonal({i, i}), -1);
    EXPECT_TRUE(m.is_scalar);
    EXPECT_FALSE(m.diagonalizer.has_value());
}

TEST(Multiplication, WrongSquare) {
    Torus t = build_torus(example1_m1());
    auto i = FieldElement::generator(t.field(), "i");
    expect_kind(ErrorKind::NotSquareRootOfD, [&] { attach_multiplication(t, diagonal({i, -i}), -2); });
    expect_kind(ErrorKind::PerfectSquare, [&] { attach_multiplication(t, diagonal({i, -i}), 4); });
}

TEST(Multiplication, NonIntegralRepresentation) {
    auto f = NumberField::create({GeneratorSpec::square_root("s", 2)});
    auto s = FieldElement::generator(f, "s");
    auto i = FieldElement::generator(f, "i");
    auto zero = q(f, 0), one = q(f, 1);
    // Lattice (Z + Z i)^2 is stable under no sqrt 2 multiplication; D has an irrational representation.
    Torus t = build_torus(FieldMatrix(2, 4, {one, i, zero, zero, zero, zero, one, i}));
    expect_kind(ErrorKind::NotAnEndomorphism, [&] { attach_multiplication(t, diagonal({s, -s}), 2); });
    // 2 * (1/2) structure: D = [[0, 2],[1, 0]] scaled by 1/2 in one entry has a non-integral representation.
    FieldMatrix half(2, 2, {zero, q(f, 4), FieldElement::from_rational(f, make_rational(1, 2)), zero});
    expect_kind(ErrorKind::NotAnEndomorphism, [&] { attach_multiplication(t, half, 2); });
}

TEST(SqrtDLattice, RealMultiplicationByRootTwo) {
    auto f = NumberField::create({GeneratorSpec::square_root("t", 3)});
    auto i = FieldElement::generator(f, "i");
    auto t3 = FieldElement::generator(f, "t");
    auto built = sqrt_d_basis_lattice(2, {q(f, 1), i}, {i * t3, q(f, 1)});
    EXPECT_EQ(built.mult.epsilon, 1);
    EXPECT_FALSE(built.mult.is_scalar);
    EXPECT_EQ(built.mult.sqrt_d * built.mult.sqrt_d, FieldElement::from_rational(built.torus.field(), 2));
    IntegerMatrix expected = integer_zero(4, 4);
    expected(0, 2) = expected(1, 3) = 2;
    expected(2, 0) = expected(3, 1) = 1;
    EXPECT_EQ(built.mult.rational_rep, expected);
}

TEST(SqrtDLattice, ReproducesExample1) {
    auto f = NumberField::create({GeneratorSpec::real_root("r", 3, 2)});
    auto i = FieldElement::generator(f, "i");
    auto r = FieldElement::generator(f, "r");
    auto one = q(f, 1);
    auto built = sqrt_d_basis_lattice(-1, {one, one}, {one + r * i, r * i});
    const FieldMatrix reference = example1_m1();
    // Columns e1, e2, D e1, D e2 are already in the order of the reference matrix.
    EXPECT_EQ(built.torus.period(), reference);
    IntegerMatrix expected = integer_zero(4, 4);
    expected(0, 2) = expected(1, 3) = -1;
    expected(2, 0) = expected(3, 1) = 1;
    EXPECT_EQ(built.mult.rational_rep, expected);
}

TEST(SqrtDLattice, RankOneIsDegenerate) {
    auto f = NumberField::create({});
    expect_kind(ErrorKind::DegenerateLattice, [&] { sqrt_d_basis_lattice(2, {q(f, 1), q(f, 0)}, {q(f, 2), q(f, 0)}); });
}

TEST(SqrtDLattice, RootAdjoinedOnce) {
    auto f = NumberField::create({});
    auto i = FieldElement::generator(f, "i");
    auto a = sqrt_d_basis_lattice(-5, {q(f, 1), i}, {q(f, 2) + i, q(f, 1)});
    EXPECT_TRUE(a.torus.field()->generator_index("sqrtm5").has_value());
    EXPECT_EQ(a.mult.sqrt_d * a.mult.sqrt_d, FieldElement::from_rational(a.torus.field(), -5));
    EXPECT_EQ(exact_sign(imaginary_part(a.mult.sqrt_d)), 1);
}
