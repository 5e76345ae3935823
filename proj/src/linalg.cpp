#include "ctorus/linalg.hpp"

#include <algorithm>

namespace ctorus {

RationalMatrix rational_zero(std::size_t rows, std::size_t cols) { return RationalMatrix(rows, cols, Rational(0)); }

RationalMatrix rational_identity(std::size_t n) { return identity_matrix<Rational>(n, Rational(0), Rational(1)); }

IntegerMatrix integer_zero(std::size_t rows, std::size_t cols) { return IntegerMatrix(rows, cols, Integer(0)); }

IntegerMatrix integer_identity(std::size_t n) { return identity_matrix<Integer>(n, Integer(0), Integer(1)); }

RationalMatrix to_rational(const IntegerMatrix& m) {
    return m.map([](const Integer& z) { return Rational(z); });
}

IntegerMatrix to_integer(const RationalMatrix& m) {
    return m.map([](const Rational& q) {
        if (!is_integer(q)) fail(ErrorKind::NotRational, "expected an integer entry, got " + to_string(q));
        return Integer(q.get_num());
    });
}

EchelonForm row_echelon(RationalMatrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a(i, c) != 0) { pivot = i; break; }
        if (pivot == rows) continue;
        a.swap_rows(r, pivot);
        const Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    RationalMatrix reduced(r, cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = a(i, j);
    return {std::move(reduced), std::move(pivots)};
}

std::size_t rank_of(const RationalMatrix& a) { return row_echelon(a).pivots.size(); }

RationalMatrix kernel_basis(const RationalMatrix& a) {
    const auto ech = row_echelon(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RationalMatrix basis(free_cols.size(), n, Rational(0));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t f = free_cols[k];
        basis(k, f) = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) basis(k, ech.pivots[i]) = -ech.reduced(i, f);
    }
    return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
    if (b.size() != a.rows()) fail(ErrorKind::DimensionMismatch, "solve: right-hand side size");
    RationalMatrix aug(a.rows(), a.cols() + 1, Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto ech = row_echelon(std::move(aug));
    if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
    RationalVector x(a.cols(), Rational(0));
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) x[ech.pivots[i]] = ech.reduced(i, a.cols());
    return x;
}

RationalMatrix inverse(const RationalMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
    RationalMatrix aug(n, 2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    const auto ech = row_echelon(std::move(aug));
    if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) fail(ErrorKind::NotInvertible, "singular rational matrix");
    return ech.reduced.block(0, n, n, n);
}

Rational determinant(RationalMatrix a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = n;
        for (std::size_t i = c; i < n; ++i)
            if (a(i, c) != 0) { pivot = i; break; }
        if (pivot == n) return 0;
        if (pivot != c) {
            a.swap_rows(pivot, c);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            const Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

namespace {

struct ExtendedGcd {
    Integer g, s, t; // g = s*a + t*b, g >= 0
};

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
    ExtendedGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Replaces rows (p, q) by the unimodular combination that zeroes column c of row q.
void combine_rows_gcd(IntegerMatrix& m, std::size_t p, std::size_t q, std::size_t c) {
    const Integer a = m(p, c), b = m(q, c);
    const auto e = extended_gcd(a, b);
    const Integer a_g = a / e.g, b_g = b / e.g;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Integer x = m(p, j), y = m(q, j);
        m(p, j) = e.s * x + e.t * y;
        m(q, j) = a_g * y - b_g * x;
    }
}

void combine_cols_gcd(IntegerMatrix& m, IntegerMatrix& u, std::size_t row, std::size_t k, std::size_t j) {
    const Integer a = m(row, k), b = m(row, j);
    const auto e = extended_gcd(a, b);
    const Integer a_g = a / e.g, b_g = b / e.g;
    auto apply = [&](IntegerMatrix& x) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            const Integer xk = x(i, k), xj = x(i, j);
            x(i, k) = e.s * xk + e.t * xj;
            x(i, j) = a_g * xj - b_g * xk;
        }
    };
    apply(m);
    apply(u);
}

} // namespace

IntegerMatrix hermite_normal_form(IntegerMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t p = 0;
    for (std::size_t c = 0; c < cols && p < rows; ++c) {
        for (std::size_t q = p + 1; q < rows; ++q)
            if (m(q, c) != 0) combine_rows_gcd(m, p, q, c);
        if (m(p, c) == 0) {
            std::size_t found = rows;
            for (std::size_t q = p + 1; q < rows; ++q)
                if (m(q, c) != 0) { found = q; break; }
            if (found == rows) continue;
            m.swap_rows(p, found);
        }
        if (m(p, c) < 0)
            for (std::size_t j = 0; j < cols; ++j) m(p, j) = -m(p, j);
        for (std::size_t q = 0; q < p; ++q) {
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), m(q, c).get_mpz_t(), m(p, c).get_mpz_t());
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) m(q, j) -= f * m(p, j);
        }
        ++p;
    }
    IntegerMatrix out(p, cols, Integer(0));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
    return out;
}

IntegerMatrix integer_kernel(const RationalMatrix& a) {
    const std::size_t n = a.cols();
    const auto ech = row_echelon(a);
    const std::size_t r = ech.pivots.size();
    // Independent integer rows spanning the same rational row space.
    IntegerMatrix m(r, n, Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
        const Integer l = lcm_of_denominators(ech.reduced.row(i));
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Integer(ech.reduced(i, j) * l);
    }
    IntegerMatrix u = integer_identity(n);
    std::size_t k = 0;
    for (std::size_t row = 0; row < r && k < n; ++row) {
        for (std::size_t j = k + 1; j < n; ++j)
            if (m(row, j) != 0) combine_cols_gcd(m, u, row, k, j);
        if (m(row, k) != 0) ++k;
    }
    IntegerMatrix kernel(n - k, n, Integer(0));
    for (std::size_t c = k; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) kernel(c - k, i) = u(i, c);
    if (kernel.rows() == 0) return kernel;
    return hermite_normal_form(std::move(kernel));
}

LatticeCoordinates::LatticeCoordinates(RationalMatrix basis)
    : basis_(std::move(basis)), pivot_inverse_(0, 0, Rational(0)) {
    const auto ech = row_echelon(basis_);
    if (ech.pivots.size() != basis_.rows()) fail(ErrorKind::NotABasis, "basis rows are linearly dependent");
    pivot_columns_ = ech.pivots;
    const std::size_t k = basis_.rows();
    RationalMatrix square(k, k, Rational(0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) square(i, j) = basis_(i, pivot_columns_[j]);
    if (k > 0) pivot_inverse_ = inverse(square);
}

std::optional<RationalVector> LatticeCoordinates::coordinates(const RationalVector& x) const {
    if (x.size() != basis_.cols()) fail(ErrorKind::DimensionMismatch, "coordinate vector size");
    const std::size_t k = basis_.rows();
    RationalVector c(k, Rational(0));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) c[j] += x[pivot_columns_[i]] * pivot_inverse_(i, j);
    if (combine_rows(basis_, c) != x) return std::nullopt;
    return c;
}

RationalVector combine_rows(const RationalMatrix& rows, const RationalVector& coeffs) {
    if (coeffs.size() != rows.rows()) fail(ErrorKind::DimensionMismatch, "combination size");
    RationalVector out(rows.cols(), Rational(0));
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        if (coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < rows.cols(); ++j) out[j] += coeffs[i] * rows(i, j);
    }
    return out;
}

} // namespace ctorus
