#include "ctorus/neronseveri.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace ctorus {

namespace {

constexpr std::size_t kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

IntegerMatrix alternating_from_entries(const IntegerVector& v) {
    IntegerMatrix e = integer_zero(4, 4);
    for (std::size_t p = 0; p < 6; ++p) {
        e(kPairs[p][0], kPairs[p][1]) = v[p];
        e(kPairs[p][1], kPairs[p][0]) = -v[p];
    }
    return e;
}

FieldElement form_value(const FieldMatrix& m, const FieldVector& x, const FieldVector& y) {
    FieldElement h = FieldElement::zero(m(0, 0).field());
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) h += x[a] * m(a, b) * conjugate(y[b]);
    return h;
}

FieldElement alt_value(const FieldMatrix& m, const FieldVector& x, const FieldVector& y) {
    return imaginary_part(form_value(m, x, y));
}

NSElement make_element(const Torus& t, const IntegerMatrix& e) {
    FieldMatrix m = hermitian_lift(t, to_rational(e));
    if (!is_hermitian(m) || alternating_values(t, m) != to_field(t.field(), e))
        fail(ErrorKind::NotClosed, "hermitian lift does not reproduce the alternating form");
    return {e, std::move(m)};
}

NSElement combine(const Torus& t, const std::vector<NSElement>& basis, const IntegerVector& c) {
    IntegerMatrix e = integer_zero(4, 4);
    for (std::size_t k = 0; k < basis.size(); ++k) e = e + scaled(basis[k].alt, c[k]);
    FieldMatrix m = field_zero(t.field(), 2, 2);
    for (std::size_t k = 0; k < basis.size(); ++k) m = m + scaled(basis[k].herm, Rational(c[k]));
    return {e, m};
}

const FieldMatrix& diagonalizer_of(const MultiplicationDatum& mult) {
    if (mult.is_scalar || !mult.diagonalizer) fail(ErrorKind::ScalarD, "multiplication is scalar");
    return *mult.diagonalizer;
}

// Symmetric real matrices S_k = J^t E_k, so that S_c(x, y) = E_c(J x, y).
std::vector<Eigen::Matrix4d> gram_forms(const NSLattice& lattice) {
    const FieldMatrix& j = lattice.torus.complex_structure();
    Eigen::Matrix4d jd;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) jd(r, c) = approximate(j(r, c)).real();
    std::vector<Eigen::Matrix4d> out;
    for (const auto& b : lattice.basis) {
        Eigen::Matrix4d e;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) e(r, c) = b.alt(r, c).get_d();
        Eigen::Matrix4d s = jd.transpose() * e;
        out.push_back((s + s.transpose()) / 2);
    }
    return out;
}

double smallest_eigenvalue(const std::vector<Eigen::Matrix4d>& s, const Eigen::VectorXd& c, Eigen::Vector4d* vec) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (std::size_t k = 0; k < s.size(); ++k) m += c(static_cast<Eigen::Index>(k)) * s[k];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
    if (vec) *vec = es.eigenvectors().col(0);
    return es.eigenvalues()(0);
}

std::optional<PolarizationResult> certify(const NSLattice& lattice, const IntegerVector& c, bool from_ascent) {
    if (std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; })) return std::nullopt;
    NSElement f = lattice.combination(c);
    if (!is_positive_definite(f.herm)) return std::nullopt;
    return PolarizationResult{c, std::move(f), from_ascent};
}

bool next_lex(std::vector<long>& v, long bound) {
    for (std::size_t k = v.size(); k-- > 0;) {
        if (v[k] < bound) {
            ++v[k];
            return true;
        }
        v[k] = -bound;
    }
    return false;
}

} // namespace

NSElement NSLattice::combination(const IntegerVector& c) const { return combine(torus, basis, c); }

FieldMatrix hermitian_lift(const Torus& t, const RationalMatrix& e) {
    const FieldMatrix& q = t.big_period_inverse();
    const FieldMatrix f = q.transposed() * to_field(t.field(), e) * q;
    const FieldElement two_i = FieldElement::generator(t.field(), "i") * Rational(2);
    return f.block(0, 2, 2, 2).map([&](const FieldElement& x) { return two_i * x; });
}

FieldMatrix alternating_values(const Torus& t, const FieldMatrix& m) {
    FieldMatrix out = field_zero(t.field(), 4, 4);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) out(k, l) = alt_value(m, t.lattice_vector(k), t.lattice_vector(l));
    return out;
}

NSLattice compute_ns(const Torus& t) {
    const FieldMatrix& j = t.complex_structure();
    // (J^t E J - E)(a, b) = sum_{k,l} J(k,a) E(k,l) J(l,b) - E(a,b), for a < b.
    std::vector<FieldVector> forms;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) {
            FieldVector form(6, FieldElement::zero(t.field()));
            for (std::size_t p = 0; p < 6; ++p) {
                const std::size_t k = kPairs[p][0], l = kPairs[p][1];
                form[p] += j(k, a) * j(l, b) - j(l, a) * j(k, b);
                if (k == a && l == b) form[p] -= FieldElement::one(t.field());
            }
            forms.push_back(std::move(form));
        }
    const IntegerMatrix kernel = integer_kernel(expand_rational_conditions(forms, 6));
    NSLattice out{t, {}};
    for (std::size_t r = 0; r < kernel.rows(); ++r) out.basis.push_back(make_element(t, alternating_from_entries(kernel.row(r))));
    return out;
}

bool is_positive_definite(const FieldMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2 || !is_hermitian(m)) return false;
    return exact_sign(m(0, 0)) == 1 && exact_sign(determinant(m)) == 1;
}

NSLattice compute_N_D(const NSLattice& ns, const MultiplicationDatum& mult) {
    if (mult.is_scalar) fail(ErrorKind::ScalarD, "N_D needs a nonscalar multiplication");
    const std::size_t n = ns.rank();
    const FieldMatrix dbar = conjugate(mult.d_analytic);
    // sum_k c_k (X_k - X_k^*) = 0 with X_k = M_k conj(D).
    std::vector<FieldMatrix> skew;
    for (const auto& b : ns.basis) {
        const FieldMatrix x = b.herm * dbar;
        skew.push_back(x - conjugate_transpose(x));
    }
    std::vector<FieldVector> forms;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            FieldVector form;
            for (std::size_t k = 0; k < n; ++k) form.push_back(skew[k](r, c));
            forms.push_back(std::move(form));
        }
    const IntegerMatrix kernel = n == 0 ? integer_zero(0, 0) : integer_kernel(expand_rational_conditions(forms, n));
    NSLattice out{ns.torus, {}};
    const RationalMatrix rd = to_rational(mult.rational_rep);
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
        NSElement e = ns.combination(kernel.row(r));
        // The twist has alternating form E R_D, integral on the lattice.
        const FieldMatrix twisted = e.herm * dbar;
        if (alternating_values(ns.torus, twisted) != to_field(ns.torus.field(), to_rational(e.alt) * rd))
            fail(ErrorKind::NotClosed, "twisted form does not match E R_D");
        out.basis.push_back(std::move(e));
    }
    return out;
}

FieldMatrix transported_form(const MultiplicationDatum& mult, const FieldMatrix& m) {
    const FieldMatrix& t = diagonalizer_of(mult);
    return t.transposed() * lifted_to(m, t(0, 0).field()) * conjugate(t);
}

CanonicalFormCoords canonical_form_coordinates(const MultiplicationDatum& mult, const FieldMatrix& m) {
    const FieldMatrix mp = transported_form(mult, m);
    if (mult.d > 0) {
        if (!mp(0, 1).is_zero() || !mp(1, 0).is_zero())
            fail(ErrorKind::NotInND, "transported form is not diagonal");
        return {mp(0, 0), mp(1, 1)};
    }
    if (!mp(0, 0).is_zero() || !mp(1, 1).is_zero()) fail(ErrorKind::NotInND, "transported form is not antidiagonal");
    return {real_part(mp(0, 1)), imaginary_part(mp(0, 1))};
}

FieldMatrix form_from_coordinates(const MultiplicationDatum& mult, const FieldElement& a, const FieldElement& b) {
    const FieldMatrix& t = diagonalizer_of(mult);
    const FieldPtr& f = t(0, 0).field();
    const FieldElement al = a.lifted_to(f), bl = b.lifted_to(f);
    FieldMatrix mp = field_zero(f, 2, 2);
    if (mult.d > 0) {
        mp(0, 0) = al;
        mp(1, 1) = bl;
    } else {
        const FieldElement i = FieldElement::generator(f, "i");
        mp(0, 1) = al + i * bl;
        mp(1, 0) = al - i * bl;
    }
    return inverse(t.transposed()) * mp * inverse(conjugate(t));
}

LambdaTable lambda_table(const Torus& t, const MultiplicationDatum& mult, const FieldVector& e1,
                         const FieldVector& e2, const CanonicalFormCoords& coords) {
    const FieldVector de1 = ctorus::apply(mult.d_analytic, e1), de2 = ctorus::apply(mult.d_analytic, e2);
    RationalMatrix span(4, 4, Rational(0));
    const FieldVector* vs[4] = {&e1, &e2, &de1, &de2};
    for (std::size_t k = 0; k < 4; ++k) {
        const FieldVector lifted{vs[k]->at(0).lifted_to(t.field()), vs[k]->at(1).lifted_to(t.field())};
        const auto c = t.lattice_coordinates(lifted);
        if (!c) fail(ErrorKind::NotABasis, "vector outside the rational span of the lattice");
        for (std::size_t j = 0; j < 4; ++j) span(k, j) = (*c)[j];
    }
    if (determinant(span) == 0) fail(ErrorKind::NotABasis, "e1, e2, De1, De2 are dependent");
    const FieldMatrix m = form_from_coordinates(mult, coords.a, coords.b);
    return {alt_value(m, e1, e2),   alt_value(m, e1, de2),  alt_value(m, e1, de1),
            alt_value(m, e2, de2),  alt_value(m, e2, de1),  alt_value(m, de1, de2)};
}

std::pair<FieldElement, FieldElement> lambda_map(const Torus& t, const MultiplicationDatum& mult,
                                                 const FieldVector& e1, const FieldVector& e2,
                                                 const CanonicalFormCoords& coords) {
    LambdaTable tab = lambda_table(t, mult, e1, e2, coords);
    return {std::move(tab.u), std::move(tab.v)};
}

std::pair<Rational, Rational> lambda_map_rational(const Torus& t, const MultiplicationDatum& mult,
                                                  const FieldVector& e1, const FieldVector& e2,
                                                  const CanonicalFormCoords& coords) {
    const auto [u, v] = lambda_map(t, mult, e1, e2, coords);
    if (!u.is_rational() || !v.is_rational())
        fail(ErrorKind::NotRational, "E_{a,b}(e1, e2) = " + to_string(u) + ", E_{a,b}(e1, De2) = " + to_string(v));
    return {u.rational_value(), v.rational_value()};
}

CanonicalFormCoords lambda_inverse(const Torus& t, const MultiplicationDatum& mult, const FieldVector& e1,
                                   const FieldVector& e2, const FieldElement& u, const FieldElement& v) {
    const FieldPtr& f = diagonalizer_of(mult)(0, 0).field();
    const FieldElement one = FieldElement::one(f), zero = FieldElement::zero(f);
    const auto [u1, v1] = lambda_map(t, mult, e1, e2, {one, zero});
    const auto [u2, v2] = lambda_map(t, mult, e1, e2, {zero, one});
    const FieldElement det = u1 * v2 - u2 * v1;
    if (det.is_zero()) fail(ErrorKind::NotABasis, "lambda is not injective on these vectors");
    return {(u * v2 - u2 * v) / det, (u1 * v - u * v1) / det};
}

std::optional<PolarizationResult> polarization_search(const NSLattice& lattice) {
    const std::size_t n = lattice.rank();
    if (n == 0) return std::nullopt;
    const auto s = gram_forms(lattice);
    const auto dim = static_cast<Eigen::Index>(n);

    // Numeric phase: supergradient ascent of c -> lambda_min(S_c) on the unit sphere.
    Eigen::VectorXd best(dim);
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::uint64_t restart = 0; restart < 32; ++restart) {
        std::mt19937_64 rng(restart + 1);
        std::normal_distribution<double> normal;
        Eigen::VectorXd c(dim);
        for (Eigen::Index k = 0; k < dim; ++k) c(k) = normal(rng);
        c.normalize();
        for (int iter = 0; iter < 200; ++iter) {
            Eigen::Vector4d v;
            const double value = smallest_eigenvalue(s, c, &v);
            if (value > best_value) {
                best_value = value;
                best = c;
            }
            Eigen::VectorXd g(dim);
            for (Eigen::Index k = 0; k < dim; ++k) g(k) = v.dot(s[static_cast<std::size_t>(k)] * v);
            c += (0.5 / std::sqrt(iter + 1.0)) * g;
            c.normalize();
        }
    }
    if (best_value > 0) {
        for (long den : {10L, 100L, 1000L, 10000L}) {
            std::vector<Rational> q;
            for (Eigen::Index k = 0; k < dim; ++k) q.push_back(rationalize(best(k), den));
            const Integer l = lcm_of_denominators(q);
            IntegerVector c;
            for (const auto& x : q) c.push_back(Rational(x * l).get_num());
            const Integer g = gcd_of(c);
            if (g == 0) continue;
            for (auto& x : c) x /= g;
            if (auto r = certify(lattice, c, true)) return r;
        }
    }

    // Box search, lexicographic within each bound.
    for (long bound : {1L, 2L, 4L, 8L}) {
        std::vector<long> v(n, -bound);
        do {
            Eigen::VectorXd c(dim);
            for (Eigen::Index k = 0; k < dim; ++k) c(k) = static_cast<double>(v[static_cast<std::size_t>(k)]);
            if (smallest_eigenvalue(s, c, nullptr) <= -1e-9) continue;
            IntegerVector ci(v.begin(), v.end());
            if (auto r = certify(lattice, ci, false)) return r;
        } while (next_lex(v, bound));
    }
    return std::nullopt;
}

const char* verdict_name(AlgebraicityVerdict v) {
    switch (v) {
    case AlgebraicityVerdict::Algebraic: return "Algebraic";
    case AlgebraicityVerdict::NotAlgebraic: return "NotAlgebraic";
    case AlgebraicityVerdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

bool antidiagonal_certificate(const NSLattice& lattice, const MultiplicationDatum& mult) {
    if (mult.is_scalar || mult.d > 0) return false;
    for (const auto& b : lattice.basis) {
        const FieldMatrix mp = transported_form(mult, b.herm);
        if (!mp(0, 0).is_zero() || !mp(1, 1).is_zero()) return false;
    }
    return true;
}

FieldMatrix determinant_gram(const NSLattice& lattice) {
    const std::size_t n = lattice.rank();
    FieldMatrix b = field_zero(lattice.torus.field(), n, n);
    for (std::size_t k = 0; k < n; ++k) b(k, k) = determinant(lattice.basis[k].herm);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            b(k, l) = (determinant(lattice.basis[k].herm + lattice.basis[l].herm) - b(k, k) - b(l, l)) * Rational(1, 2);
            b(l, k) = b(k, l);
        }
    return b;
}

bool determinant_form_certificate(const NSLattice& lattice) {
    const std::size_t n = lattice.rank();
    const FieldMatrix neg = scaled(determinant_gram(lattice), Rational(-1));
    // -B is positive semidefinite iff every principal minor is >= 0.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (1u << k)) idx.push_back(k);
        FieldMatrix sub = field_zero(lattice.torus.field(), idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t c = 0; c < idx.size(); ++c) sub(a, c) = neg(idx[a], idx[c]);
        if (exact_sign(determinant(sub)) < 0) return false;
    }
    return true;
}

AlgebraicityReport is_algebraic(const Torus& t, const std::vector<MultiplicationDatum>& mults) {
    AlgebraicityReport out;
    const NSLattice ns = compute_ns(t);
    out.ns_rank = ns.rank();
    if (ns.rank() == 0) {
        out.verdict = AlgebraicityVerdict::NotAlgebraic;
        out.obstruction = "NS has rank 0";
        return out;
    }
    for (std::size_t k = 0; k < mults.size(); ++k) {
        if (antidiagonal_certificate(ns, mults[k])) {
            out.verdict = AlgebraicityVerdict::NotAlgebraic;
            out.obstruction = "every NS class is antidiagonal under multiplication " + std::to_string(k) + " (d = " +
                              to_string(mults[k].d) + ")";
            return out;
        }
    }
    if (determinant_form_certificate(ns)) {
        out.verdict = AlgebraicityVerdict::NotAlgebraic;
        out.obstruction = "det is negative semidefinite on NS tensor R";
        return out;
    }
    out.polarization = polarization_search(ns);
    out.verdict = out.polarization ? AlgebraicityVerdict::Algebraic : AlgebraicityVerdict::Unknown;
    return out;
}

SymmetricEndo ns_to_symmetric_endo(const FieldMatrix& h, const EndoRing& ring, const RosatiData& ros) {
    const Torus& t = ring.torus;
    if (!is_hermitian(h)) fail(ErrorKind::NotInEndo, "form is not hermitian");
    const FieldMatrix a = inverse(conjugate(ros.h0)) * conjugate(h);
    const auto r = t.rational_representation(a);
    if (!r) fail(ErrorKind::NotInEndo, "phi_H0^-1 phi_H is not rational on the lattice");
    const auto c = ring.coordinates(*r);
    if (!c) fail(ErrorKind::NotInEndo, "phi_H0^-1 phi_H is not in End_Q");
    const std::size_t n = ring.rank();
    for (std::size_t i = 0; i < n; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j) s += ros.involution(i, j) * (*c)[j];
        if (s != (*c)[i]) fail(ErrorKind::NotInEndo, "image is not Rosati-symmetric");
    }
    return {*c, a, *r};
}

} // namespace ctorus
