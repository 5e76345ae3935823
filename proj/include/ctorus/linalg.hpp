#pragma once

#include "ctorus/matrix.hpp"
#include "ctorus/rational.hpp"

#include <optional>
#include <vector>

namespace ctorus {

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

RationalMatrix rational_zero(std::size_t rows, std::size_t cols);
RationalMatrix rational_identity(std::size_t n);
IntegerMatrix integer_zero(std::size_t rows, std::size_t cols);
IntegerMatrix integer_identity(std::size_t n);

RationalMatrix to_rational(const IntegerMatrix& m);
/// Throws NotRational unless every entry is an integer.
IntegerMatrix to_integer(const RationalMatrix& m);

struct EchelonForm {
    RationalMatrix reduced;             // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;    // pivot column of each row
};

EchelonForm row_echelon(RationalMatrix a);
std::size_t rank_of(const RationalMatrix& a);

/// Rows form a basis of {x : a x = 0}; one vector per free column, free entry 1.
RationalMatrix kernel_basis(const RationalMatrix& a);

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);
RationalMatrix inverse(const RationalMatrix& a);
Rational determinant(RationalMatrix a);

/// Row-style Hermite normal form of the row lattice; zero rows removed. Pivots are
/// positive and entries above each pivot are reduced into [0, pivot).
IntegerMatrix hermite_normal_form(IntegerMatrix rows);

/// Saturated Z-basis of {x in Z^n : a x = 0}, returned as the rows of its Hermite normal form.
IntegerMatrix integer_kernel(const RationalMatrix& a);

/// Solves coordinates with respect to a fixed list of independent row vectors.
class LatticeCoordinates {
public:
    explicit LatticeCoordinates(RationalMatrix basis);

    std::size_t rank() const noexcept { return basis_.rows(); }
    std::size_t ambient() const noexcept { return basis_.cols(); }
    const RationalMatrix& basis() const noexcept { return basis_; }

    /// Coordinates c with sum c_k basis_k = x, or nullopt if x is outside the rational span.
    std::optional<RationalVector> coordinates(const RationalVector& x) const;

private:
    RationalMatrix basis_;
    std::vector<std::size_t> pivot_columns_;
    RationalMatrix pivot_inverse_;
};

RationalVector combine_rows(const RationalMatrix& rows, const RationalVector& coeffs);

} // namespace ctorus
