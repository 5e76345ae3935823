#pragma once

#include "ctorus/endo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ctorus {

/// A class in NS: the alternating form E = Im H on lattice generators and the matrix M of
/// H(x, y) = x^t M conj(y).
struct NSElement {
    IntegerMatrix alt;   // 4x4 antisymmetric
    FieldMatrix herm;    // 2x2 hermitian
};

struct NSLattice {
    Torus torus;
    std::vector<NSElement> basis;

    std::size_t rank() const noexcept { return basis.size(); }
    NSElement combination(const IntegerVector& c) const;
};

/// Hermitian matrix M with Im H = E; M = 2i F_12 where F = P^-t E P^-1.
FieldMatrix hermitian_lift(const Torus& t, const RationalMatrix& e);
/// Im H(lambda_k, lambda_l) for a hermitian matrix M.
FieldMatrix alternating_values(const Torus& t, const FieldMatrix& m);

/// Integer alternating forms E with J^t E J = E, as a saturated lattice in Hermite normal form.
NSLattice compute_ns(const Torus& t);

/// M_11 > 0 and det M > 0, decided by exact_sign.
bool is_positive_definite(const FieldMatrix& m);

/// Classes H in NS whose twist H(x, D y), with matrix M conj(D), is hermitian again; saturated.
NSLattice compute_N_D(const NSLattice& ns, const MultiplicationDatum& mult);

struct CanonicalFormCoords {
    FieldElement a;
    FieldElement b;
};

/// Transports M to M' = T^t M conj(T) with T the diagonalizer of D; M' is diag(a, b) for d > 0 and
/// [[0, a + ib], [a - ib, 0]] for d < 0.
FieldMatrix transported_form(const MultiplicationDatum& mult, const FieldMatrix& m);
CanonicalFormCoords canonical_form_coordinates(const MultiplicationDatum& mult, const FieldMatrix& m);
/// Inverse of the transport: the matrix M with canonical coordinates (a, b).
FieldMatrix form_from_coordinates(const MultiplicationDatum& mult, const FieldElement& a, const FieldElement& b);

/// The six values of E_{a,b} on e1, e2, D e1, D e2 that the lambda map is built from.
struct LambdaTable {
    FieldElement u;          // E(e1, e2)
    FieldElement v;          // E(e1, D e2)
    FieldElement e1_de1;     // E(e1, D e1)
    FieldElement e2_de2;     // E(e2, D e2)
    FieldElement e2_de1;     // E(e2, D e1)
    FieldElement de1_de2;    // E(D e1, D e2)
};

/// (a, b) -> (E_{a,b}(e1, e2), E_{a,b}(e1, D e2)). Values are real field elements; they are
/// rational exactly when H_{a,b} lies in N_D tensor Q. Throws NotABasis unless e1, e2, De1, De2
/// are Q-independent vectors of the rational span of the lattice.
LambdaTable lambda_table(const Torus& t, const MultiplicationDatum& mult, const FieldVector& e1,
                         const FieldVector& e2, const CanonicalFormCoords& coords);
std::pair<FieldElement, FieldElement> lambda_map(const Torus& t, const MultiplicationDatum& mult,
                                                 const FieldVector& e1, const FieldVector& e2,
                                                 const CanonicalFormCoords& coords);
/// As lambda_map, but throws NotRational unless u and v are rational.
std::pair<Rational, Rational> lambda_map_rational(const Torus& t, const MultiplicationDatum& mult,
                                                  const FieldVector& e1, const FieldVector& e2,
                                                  const CanonicalFormCoords& coords);
/// Solves lambda(a, b) = (u, v).
CanonicalFormCoords lambda_inverse(const Torus& t, const MultiplicationDatum& mult, const FieldVector& e1,
                                   const FieldVector& e2, const FieldElement& u, const FieldElement& v);

struct PolarizationResult {
    IntegerVector coefficients;  // in the lattice basis
    NSElement form;
    bool from_ascent = false;    // certified output of the numeric phase rather than the box search
};

/// Numeric proposal by maximizing the smallest eigenvalue of E_c(Jx, y), then exact certification;
/// falls back to a box search. nullopt means none found under the caps.
std::optional<PolarizationResult> polarization_search(const NSLattice& lattice);

enum class AlgebraicityVerdict { Algebraic, NotAlgebraic, Unknown };

const char* verdict_name(AlgebraicityVerdict v);

struct AlgebraicityReport {
    AlgebraicityVerdict verdict = AlgebraicityVerdict::Unknown;
    std::optional<PolarizationResult> polarization;  // Algebraic
    std::string obstruction;                         // NotAlgebraic: which certificate applied
    std::size_t ns_rank = 0;
};

/// Algebraic with a certified polarization. NotAlgebraic when NS = 0, when some nonscalar d < 0
/// multiplication transports every NS class to antidiagonal form, or when det is negative
/// semidefinite on NS tensor R. Unknown otherwise.
AlgebraicityReport is_algebraic(const Torus& t, const std::vector<MultiplicationDatum>& mults = {});

/// Symmetric bilinear form of det on the lattice basis: B(k, l) = (det(M_k + M_l) - det M_k - det M_l) / 2.
/// Entries are real field elements.
FieldMatrix determinant_gram(const NSLattice& lattice);

/// det restricted to the real span of the lattice is negative semidefinite, checked exactly on all
/// principal minors. Since det is Lorentzian on hermitian 2x2 matrices, this holds exactly when the
/// span contains no definite form.
bool determinant_form_certificate(const NSLattice& lattice);

/// True when every basis element of the lattice transports to antidiagonal form under mult (d < 0).
bool antidiagonal_certificate(const NSLattice& lattice, const MultiplicationDatum& mult);

struct SymmetricEndo {
    RationalVector coordinates;  // in the ring basis
    FieldMatrix analytic;        // conj(M0)^-1 conj(M)
    RationalMatrix rational;     // E0^-1 E
};

/// H -> phi_{H0}^-1 phi_H, the endomorphism A with H(x, y) = H0(x, A y).
SymmetricEndo ns_to_symmetric_endo(const FieldMatrix& h, const EndoRing& ring, const RosatiData& ros);

} // namespace ctorus
