#include "ctorus/field_matrix.hpp"

namespace ctorus {

FieldMatrix field_zero(const FieldPtr& field, std::size_t rows, std::size_t cols) {
    return FieldMatrix(rows, cols, FieldElement::zero(field));
}

FieldMatrix field_identity(const FieldPtr& field, std::size_t n) {
    return identity_matrix<FieldElement>(n, FieldElement::zero(field), FieldElement::one(field));
}

FieldMatrix to_field(const FieldPtr& field, const RationalMatrix& m) {
    return m.map([&](const Rational& q) { return FieldElement::from_rational(field, q); });
}

FieldMatrix to_field(const FieldPtr& field, const IntegerMatrix& m) { return to_field(field, to_rational(m)); }

FieldMatrix diagonal(const FieldVector& entries) {
    const auto zero = FieldElement::zero(entries.at(0).field());
    FieldMatrix m(entries.size(), entries.size(), zero);
    for (std::size_t k = 0; k < entries.size(); ++k) m(k, k) = entries[k];
    return m;
}

FieldMatrix conjugate(const FieldMatrix& m) {
    return m.map([](const FieldElement& x) { return conjugate(x); });
}

FieldMatrix conjugate_transpose(const FieldMatrix& m) { return conjugate(m).transposed(); }

bool is_real(const FieldMatrix& m) {
    for (const auto& x : m.data())
        if (!is_real(x)) return false;
    return true;
}

bool is_hermitian(const FieldMatrix& m) { return m.rows() == m.cols() && conjugate_transpose(m) == m; }

bool is_zero(const FieldMatrix& m) {
    for (const auto& x : m.data())
        if (!x.is_zero()) return false;
    return true;
}

bool is_scalar(const FieldMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (r == c && m(r, c) != m(0, 0)) return false;
            if (r != c && !m(r, c).is_zero()) return false;
        }
    return true;
}

std::optional<RationalMatrix> rational_entries(const FieldMatrix& m) {
    RationalMatrix out(m.rows(), m.cols(), Rational(0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!m(r, c).is_rational()) return std::nullopt;
            out(r, c) = m(r, c).coeffs()[0];
        }
    return out;
}

FieldElement determinant(const FieldMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    FieldMatrix a = m;
    FieldElement det = FieldElement::one(m(0, 0).field());
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = n;
        for (std::size_t r = c; r < n; ++r)
            if (!a(r, c).is_zero()) { pivot = r; break; }
        if (pivot == n) return FieldElement::zero(m(0, 0).field());
        if (pivot != c) {
            a.swap_rows(pivot, c);
            det = -det;
        }
        det *= a(c, c);
        const FieldElement pivot_inv = FieldElement::one(det.field()) / a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c).is_zero()) continue;
            const FieldElement f = a(r, c) * pivot_inv;
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

FieldMatrix inverse(const FieldMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
    FieldMatrix a = m;
    FieldMatrix inv = field_identity(m(0, 0).field(), n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = n;
        for (std::size_t r = c; r < n; ++r)
            if (!a(r, c).is_zero()) { pivot = r; break; }
        if (pivot == n) fail(ErrorKind::NotInvertible, "singular field matrix");
        a.swap_rows(pivot, c);
        inv.swap_rows(pivot, c);
        const FieldElement p_inv = FieldElement::one(a(c, c).field()) / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= p_inv;
            inv(c, j) *= p_inv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero()) continue;
            const FieldElement f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

FieldVector apply(const FieldMatrix& m, const FieldVector& v) {
    if (m.cols() != v.size()) fail(ErrorKind::DimensionMismatch, "matrix-vector product");
    FieldVector out(m.rows(), FieldElement::zero(v.at(0).field()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

FieldMatrix lifted_to(const FieldMatrix& m, const FieldPtr& larger) {
    return m.map([&](const FieldElement& x) { return x.lifted_to(larger); });
}

RationalMatrix expand_rational_conditions(const std::vector<FieldVector>& forms, std::size_t unknowns) {
    FieldPtr widest;
    for (const auto& form : forms)
        for (const auto& c : form)
            if (!widest || widest->dimension() < c.field()->dimension()) widest = c.field();
    if (!widest) return rational_zero(0, unknowns);
    const std::size_t n = widest->dimension();
    RationalMatrix out(forms.size() * n, unknowns, Rational(0));
    for (std::size_t f = 0; f < forms.size(); ++f) {
        if (forms[f].size() != unknowns) fail(ErrorKind::DimensionMismatch, "condition length");
        for (std::size_t k = 0; k < unknowns; ++k) {
            const FieldElement c = forms[f][k].lifted_to(widest);
            for (std::size_t m = 0; m < n; ++m) out(f * n + m, k) = c.coeffs()[m];
        }
    }
    return out;
}

} // namespace ctorus
