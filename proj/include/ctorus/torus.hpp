#pragma once

#include "ctorus/field_matrix.hpp"

#include <optional>

namespace ctorus {

/// A two-dimensional complex torus C^2 / Lambda. The columns of the 2x4 period matrix are
/// the lattice generators; lattice coordinates refer to this basis throughout.
class Torus {
public:
    const FieldPtr& field() const noexcept { return field_; }
    /// 2x4 period matrix.
    const FieldMatrix& period() const noexcept { return period_; }
    /// 4x4 big period matrix: the period matrix stacked over its conjugate.
    const FieldMatrix& big_period() const noexcept { return big_period_; }
    const FieldMatrix& big_period_inverse() const noexcept { return big_period_inverse_; }
    /// Real 4x4 matrix of multiplication by i in lattice coordinates.
    const FieldMatrix& complex_structure() const noexcept { return complex_structure_; }
    const FieldElement& big_period_determinant() const noexcept { return det_; }

    /// Column k of the period matrix as a vector of C^2.
    FieldVector lattice_vector(std::size_t k) const;

    /// R with A * Pi = Pi * R when such a rational R exists.
    std::optional<RationalMatrix> rational_representation(const FieldMatrix& analytic) const;
    /// Upper-left block of P R P^-1; equals A whenever R represents an endomorphism A.
    FieldMatrix analytic_representation(const RationalMatrix& rational) const;
    /// Lattice coordinates of a vector of C^2 when they are rational.
    std::optional<RationalVector> lattice_coordinates(const FieldVector& z) const;

private:
    friend Torus build_torus(const FieldMatrix& period);
    Torus(FieldPtr field, FieldMatrix period, FieldMatrix big, FieldMatrix big_inv, FieldMatrix j, FieldElement det);

    FieldPtr field_;
    FieldMatrix period_;
    FieldMatrix big_period_;
    FieldMatrix big_period_inverse_;
    FieldMatrix complex_structure_;
    FieldElement det_;
};

/// Certifies det P != 0, computes J = P^-1 diag(i, i, -i, -i) P and checks it is real with J^2 = -1.
Torus build_torus(const FieldMatrix& period);

/// Multiplication by sqrt(d): an endomorphism D with D^2 = d.
struct MultiplicationDatum {
    FieldMatrix d_analytic;             // 2x2
    IntegerMatrix rational_rep;         // 4x4, D Pi = Pi R
    Integer d;
    int epsilon = 1;                    // sign of d
    bool is_scalar = false;
    FieldElement sqrt_d;                // the chosen root: positive, or positive imaginary part
    std::optional<FieldMatrix> diagonalizer; // T with T^-1 D T = diag(sqrt d, -sqrt d), nonscalar only
};

MultiplicationDatum attach_multiplication(const Torus& torus, const FieldMatrix& d_analytic, const Integer& d);

/// Adds sqrt(d) to the field when no rational multiple of a monomial squares to d.
FieldElement square_root_in_extension(const FieldPtr& field, const Integer& d);

struct SqrtDLattice {
    Torus torus;
    MultiplicationDatum mult;
    FieldVector e1;
    FieldVector e2;
};

/// Lattice Z e1 + Z e2 + Z D e1 + Z D e2 with D = diag(sqrt d, -sqrt d).
SqrtDLattice sqrt_d_basis_lattice(const Integer& d, const FieldVector& e1, const FieldVector& e2);

/// Column matrix from a list of vectors of C^2.
FieldMatrix period_from_columns(const std::vector<FieldVector>& columns);

} // namespace ctorus
