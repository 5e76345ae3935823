#pragma once

#include "ctorus/torus.hpp"

#include <optional>
#include <vector>

namespace ctorus {

struct Endomorphism {
    IntegerMatrix rational;  // 4x4, action on lattice coordinates
    FieldMatrix analytic;    // 2x2, A Pi = Pi R
};

/// Z-basis of End(Lambda), identity first, with its multiplication table.
struct EndoRing {
    Torus torus;
    std::vector<Endomorphism> basis;
    // structure[i][j][k]: coefficient of basis k in basis i * basis j
    std::vector<std::vector<IntegerVector>> structure;

    std::size_t rank() const noexcept { return basis.size(); }
    /// Rational coordinates of a 4x4 matrix in the basis, if it lies in the Q-span.
    std::optional<RationalVector> coordinates(const RationalMatrix& r) const;
    /// Sum of c_k times the rational representation of basis k.
    RationalMatrix combination(const RationalVector& c) const;
};

EndoRing compute_endo_ring(const Torus& t);

/// Recomputes and verifies the multiplication table; throws NotClosed if a product leaves the Z-span.
std::vector<std::vector<IntegerVector>> structure_constants(const EndoRing& ring);

enum class AlgebraTag {
    RationalField,
    RealQuadratic,
    ImaginaryQuadratic,
    CMField,
    IndefiniteQuaternion,
    DefiniteQuaternion,
    MatrixAlgebraOverQuadratic,
    Other
};

const char* algebra_tag_name(AlgebraTag tag);

struct AlgebraClass {
    AlgebraTag tag = AlgebraTag::Other;
    // Quadratic fields and M_2(Q(sqrt d)): [d] squarefree. CM fields: [d0] for the real
    // quadratic subfield. Quaternion algebras: [a, b] with the algebra isomorphic to (a, b)_Q.
    std::vector<Integer> discriminant_data;
    std::size_t center_dimension = 0;
};

AlgebraClass classify_algebra(const EndoRing& ring);

struct RosatiData {
    FieldMatrix h0;
    // column j holds the coordinates of basis_j' in the ring basis
    RationalMatrix involution;
};

/// Hermitian form H(x, y) = x^t M conj(y) is a polarization: M positive definite and
/// Im H integral on the lattice.
bool is_polarization(const Torus& t, const FieldMatrix& m);

RosatiData rosati_involution(const EndoRing& ring, const FieldMatrix& h0);

struct SymmetricSubspace {
    RationalMatrix basis;  // rows are coordinates in the ring basis
    std::size_t dimension = 0;
};

SymmetricSubspace symmetric_subspace(const RosatiData& ros);

struct RealMultiplication {
    Integer d_prime;         // squarefree part of d_double_prime
    Integer d_double_prime;  // beta^2 = d_double_prime
    Endomorphism beta;
    bool squarefree_uncertain = false;
};

RealMultiplication find_real_multiplication(const EndoRing& ring, const RosatiData& ros);

/// Brute force over integer matrices with entries in [-bound, bound] that commute with the
/// complex structure. Independent of compute_endo_ring; bound at most 3.
std::vector<IntegerMatrix> endo_box_oracle(const Torus& t, long bound);

/// Elements of the computed ring with every entry in [-bound, bound], sorted lexicographically.
/// Enumerates the entries at the pivot columns of the basis, which determine the coordinates.
std::vector<IntegerMatrix> ring_box_elements(const EndoRing& ring, long bound);

/// 4x4 matrix from 16 row-major entries and back.
IntegerMatrix matrix_from_entries(const IntegerVector& v);
RationalVector entries_of(const RationalMatrix& m);

} // namespace ctorus
