#pragma once

#include "ctorus/linalg.hpp"
#include "ctorus/number_field.hpp"

#include <optional>

namespace ctorus {

using FieldMatrix = Matrix<FieldElement>;
using FieldVector = std::vector<FieldElement>;

FieldMatrix field_zero(const FieldPtr& field, std::size_t rows, std::size_t cols);
FieldMatrix field_identity(const FieldPtr& field, std::size_t n);
FieldMatrix to_field(const FieldPtr& field, const RationalMatrix& m);
FieldMatrix to_field(const FieldPtr& field, const IntegerMatrix& m);
FieldMatrix diagonal(const FieldVector& entries);

FieldMatrix conjugate(const FieldMatrix& m);
FieldMatrix conjugate_transpose(const FieldMatrix& m);
bool is_real(const FieldMatrix& m);
bool is_hermitian(const FieldMatrix& m);
bool is_zero(const FieldMatrix& m);
bool is_scalar(const FieldMatrix& m);

/// Rational matrix if every entry is rational.
std::optional<RationalMatrix> rational_entries(const FieldMatrix& m);

FieldElement determinant(const FieldMatrix& m);
/// Gauss-Jordan over the field; throws NotInvertible on a singular matrix.
FieldMatrix inverse(const FieldMatrix& m);

/// Each form lists field coefficients c_k of a condition sum_k c_k x_k = 0 on rational unknowns
/// x_k; every monomial coordinate of the condition becomes one rational equation (row).
RationalMatrix expand_rational_conditions(const std::vector<FieldVector>& forms, std::size_t unknowns);

FieldVector apply(const FieldMatrix& m, const FieldVector& v);
FieldMatrix lifted_to(const FieldMatrix& m, const FieldPtr& larger);

} // namespace ctorus
