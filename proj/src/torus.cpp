#include "ctorus/torus.hpp"

namespace ctorus {

Torus::Torus(FieldPtr field, FieldMatrix period, FieldMatrix big, FieldMatrix big_inv, FieldMatrix j, FieldElement det)
    : field_(std::move(field)), period_(std::move(period)), big_period_(std::move(big)),
      big_period_inverse_(std::move(big_inv)), complex_structure_(std::move(j)), det_(std::move(det)) {}

FieldVector Torus::lattice_vector(std::size_t k) const { return {period_(0, k), period_(1, k)}; }

std::optional<RationalMatrix> Torus::rational_representation(const FieldMatrix& a) const {
    if (a.rows() != 2 || a.cols() != 2) fail(ErrorKind::DimensionMismatch, "analytic representation must be 2x2");
    FieldMatrix block = field_zero(field_, 4, 4);
    const FieldMatrix ac = conjugate(a);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            block(r, c) = a(r, c);
            block(r + 2, c + 2) = ac(r, c);
        }
    auto rep = rational_entries(big_period_inverse_ * block * big_period_);
    if (!rep) return std::nullopt;
    // Confirm A Pi = Pi R exactly.
    if (a * period_ != period_ * to_field(field_, *rep)) return std::nullopt;
    return rep;
}

FieldMatrix Torus::analytic_representation(const RationalMatrix& r) const {
    // Pi R Q where Q holds the first two columns of P^-1, a right inverse of Pi.
    const FieldMatrix q = big_period_inverse_.block(0, 0, 4, 2);
    return period_ * to_field(field_, r) * q;
}

std::optional<RationalVector> Torus::lattice_coordinates(const FieldVector& z) const {
    FieldVector stacked{z.at(0), z.at(1), conjugate(z[0]), conjugate(z[1])};
    const FieldVector x = ctorus::apply(big_period_inverse_, stacked);
    RationalVector out;
    for (const auto& e : x) {
        if (!e.is_rational()) return std::nullopt;
        out.push_back(e.coeffs()[0]);
    }
    return out;
}

Torus build_torus(const FieldMatrix& period) {
    if (period.rows() != 2 || period.cols() != 4) fail(ErrorKind::DimensionMismatch, "period matrix must be 2x4");
    const FieldPtr field = period(0, 0).field();
    FieldMatrix big = field_zero(field, 4, 4);
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t r = 0; r < 2; ++r) {
            big(r, c) = period(r, c).lifted_to(field);
            big(r + 2, c) = conjugate(big(r, c));
        }
    const FieldElement det = determinant(big);
    if (det.is_zero()) fail(ErrorKind::DegenerateLattice, "big period matrix is singular");
    if (exact_sign(det * conjugate(det)) != 1)
        fail(ErrorKind::DegenerateLattice, "could not certify |det P|^2 > 0");
    const FieldMatrix big_inv = inverse(big);
    const auto i = FieldElement::generator(field, "i");
    const FieldMatrix j = big_inv * diagonal({i, i, -i, -i}) * big;
    if (!is_real(j)) fail(ErrorKind::NotReal, "complex structure is not real; conjugation declarations are inconsistent");
    if (j * j != scaled(field_identity(field, 4), Rational(-1)))
        fail(ErrorKind::NotReal, "complex structure does not square to -1");
    return Torus(field, big.block(0, 0, 2, 4), big, big_inv, j, det);
}

FieldElement square_root_in_extension(const FieldPtr& field, const Integer& d) {
    if (auto root = find_square_root(field, d)) return *root;
    std::string name = d > 0 ? "sqrt" + to_string(d) : "sqrtm" + to_string(Integer(-d));
    while (field->generator_index(name)) name += "_";
    const auto sf = squarefree_part(d);
    const FieldPtr larger = field->extended(GeneratorSpec::square_root(name, sf.value));
    return FieldElement::generator(larger, name) * Rational(sf.square_root);
}

namespace {

// Kernel vector of a singular 2x2 matrix with first nonzero coordinate 1.
FieldVector normalized_kernel_vector(const FieldMatrix& n) {
    const bool top = !n(0, 0).is_zero() || !n(0, 1).is_zero();
    FieldVector v = top ? FieldVector{-n(0, 1), n(0, 0)} : FieldVector{-n(1, 1), n(1, 0)};
    const FieldElement lead = v[0].is_zero() ? v[1] : v[0];
    const FieldElement inv = FieldElement::one(lead.field()) / lead;
    return {v[0] * inv, v[1] * inv};
}

} // namespace

MultiplicationDatum attach_multiplication(const Torus& torus, const FieldMatrix& d_analytic, const Integer& d) {
    if (d >= 0 && is_perfect_square(d)) fail(ErrorKind::PerfectSquare, to_string(d) + " is a perfect square");
    if (d_analytic.rows() != 2 || d_analytic.cols() != 2) fail(ErrorKind::DimensionMismatch, "D must be 2x2");
    const FieldPtr& field = torus.field();
    const FieldMatrix dm = d_analytic.map([&](const FieldElement& x) { return x.lifted_to(field); });
    if (dm * dm != scaled(field_identity(field, 2), Rational(d)))
        fail(ErrorKind::NotSquareRootOfD, "D^2 != " + to_string(d) + " * identity");
    auto rep = torus.rational_representation(dm);
    if (!rep) fail(ErrorKind::NotAnEndomorphism, "D does not preserve the rational span of the lattice");
    for (const auto& q : rep->data())
        if (!is_integer(q)) fail(ErrorKind::NotAnEndomorphism, "D maps a lattice vector outside the lattice");

    MultiplicationDatum out{dm, to_integer(*rep), d, d > 0 ? 1 : -1, is_scalar(dm),
                            FieldElement::zero(field), std::nullopt};
    if (out.is_scalar) {
        out.sqrt_d = dm(0, 0);
        return out;
    }
    const FieldElement root = square_root_in_extension(field, d);
    out.sqrt_d = root;
    const FieldMatrix dl = lifted_to(dm, root.field());
    auto shifted = [&](const FieldElement& lambda) {
        FieldMatrix n = dl;
        n(0, 0) -= lambda;
        n(1, 1) -= lambda;
        return n;
    };
    const FieldVector plus = normalized_kernel_vector(shifted(root));
    const FieldVector minus = normalized_kernel_vector(shifted(-root));
    FieldMatrix t = field_zero(root.field(), 2, 2);
    t(0, 0) = plus[0];
    t(1, 0) = plus[1];
    t(0, 1) = minus[0];
    t(1, 1) = minus[1];
    if (inverse(t) * dl * t != diagonal({root, -root}))
        fail(ErrorKind::NotSquareRootOfD, "diagonalization of D failed");
    out.diagonalizer = std::move(t);
    return out;
}

FieldMatrix period_from_columns(const std::vector<FieldVector>& columns) {
    FieldMatrix p = field_zero(columns.at(0).at(0).field(), 2, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t r = 0; r < 2; ++r) p(r, c) = columns[c].at(r);
    return p;
}

SqrtDLattice sqrt_d_basis_lattice(const Integer& d, const FieldVector& e1, const FieldVector& e2) {
    if (d >= 0 && is_perfect_square(d)) fail(ErrorKind::PerfectSquare, to_string(d) + " is a perfect square");
    const FieldElement root = square_root_in_extension(e1.at(0).field(), d);
    const FieldPtr field = root.field();
    FieldVector a{e1.at(0).lifted_to(field), e1.at(1).lifted_to(field)};
    FieldVector b{e2.at(0).lifted_to(field), e2.at(1).lifted_to(field)};
    const FieldMatrix dm = diagonal({root, -root});
    Torus torus = build_torus(period_from_columns(std::vector<FieldVector>{a, b, ctorus::apply(dm, a), ctorus::apply(dm, b)}));
    MultiplicationDatum mult = attach_multiplication(torus, dm, d);
    return {std::move(torus), std::move(mult), std::move(a), std::move(b)};
}

} // namespace ctorus
