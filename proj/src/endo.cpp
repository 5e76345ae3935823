#include "ctorus/endo.hpp"

#include <algorithm>

namespace ctorus {

IntegerMatrix matrix_from_entries(const IntegerVector& v) { return IntegerMatrix(4, 4, v); }

RationalVector entries_of(const RationalMatrix& m) { return m.data(); }

namespace {

RationalMatrix basis_rows(const EndoRing& ring) {
    RationalMatrix rows(ring.rank(), 16, Rational(0));
    for (std::size_t k = 0; k < ring.rank(); ++k)
        for (std::size_t e = 0; e < 16; ++e) rows(k, e) = ring.basis[k].rational.data()[e];
    return rows;
}

// Coordinates of the product of two elements given by coordinates.
RationalVector multiply_coords(const EndoRing& ring, const RationalVector& a, const RationalVector& b) {
    RationalVector out(ring.rank(), Rational(0));
    for (std::size_t i = 0; i < ring.rank(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < ring.rank(); ++j) {
            if (b[j] == 0) continue;
            const Rational ab = a[i] * b[j];
            for (std::size_t k = 0; k < ring.rank(); ++k) out[k] += ab * ring.structure[i][j][k];
        }
    }
    return out;
}

RationalVector unit(std::size_t n, std::size_t k) {
    RationalVector v(n, Rational(0));
    v[k] = 1;
    return v;
}

bool is_scalar_coords(const RationalVector& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] != 0) return false;
    return true;
}

// x^2 = p x + q for x outside Q; nullopt when x^2 leaves span{1, x}.
std::optional<std::pair<Rational, Rational>> quadratic_relation(const EndoRing& ring, const RationalVector& x) {
    const std::size_t n = ring.rank();
    RationalMatrix rows(2, n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        rows(0, k) = k == 0 ? 1 : 0;
        rows(1, k) = x[k];
    }
    if (rank_of(rows) < 2) return std::nullopt;
    const auto c = LatticeCoordinates(rows).coordinates(multiply_coords(ring, x, x));
    if (!c) return std::nullopt;
    return std::make_pair((*c)[1], (*c)[0]);
}

Integer cleared_squarefree(const Rational& disc) {
    // disc = num/den is a square multiple of num*den.
    return squarefree_part(disc.get_num() * disc.get_den()).value;
}

RationalMatrix center_basis(const EndoRing& ring) {
    const std::size_t n = ring.rank();
    RationalMatrix sys(n * n, n, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                sys(j * n + k, i) = Rational(ring.structure[i][j][k] - ring.structure[j][i][k]);
    return kernel_basis(sys);
}

// Odometer over integer vectors with entries in [-bound, bound]; returns false after the last.
bool next_in_box(std::vector<long>& v, long bound) {
    for (auto& x : v) {
        if (x < bound) {
            ++x;
            return true;
        }
        x = -bound;
    }
    return false;
}

AlgebraClass classify_quadratic(const EndoRing& ring, const RationalVector& x, AlgebraTag real, AlgebraTag imag) {
    AlgebraClass out;
    const auto rel = quadratic_relation(ring, x);
    if (!rel) return out;
    const Rational disc = rel->first * rel->first + 4 * rel->second;
    if (disc == 0) return out;
    const Integer d = cleared_squarefree(disc);
    if (d == 1) return out;
    out.tag = disc > 0 ? real : imag;
    out.discriminant_data = {d};
    return out;
}

AlgebraClass classify_commutative_rank4(const EndoRing& ring) {
    AlgebraClass out;
    const std::size_t n = ring.rank();
    // Look for y with y^2 = c > 0 nonsquare: a real quadratic subfield Q(y).
    std::optional<RationalVector> y;
    Rational c;
    for (long bound = 1; bound <= 4 && !y; ++bound) {
        std::vector<long> v(n - 1, -bound);
        do {
            if (std::all_of(v.begin(), v.end(), [](long t) { return t == 0; })) continue;
            RationalVector x(n, Rational(0));
            for (std::size_t k = 1; k < n; ++k) x[k] = v[k - 1];
            const auto rel = quadratic_relation(ring, x);
            if (!rel) continue;
            const Rational disc = rel->first * rel->first + 4 * rel->second;
            if (disc <= 0 || cleared_squarefree(disc) == 1) continue;
            RationalVector cand = x;
            for (auto& t : cand) t *= 2;
            cand[0] -= rel->first;
            y = cand;
            c = disc;
        } while (!y && next_in_box(v, bound));
    }
    if (!y) return out;
    // Over K0 = Q(y) the algebra is K0[z]; z^2 = p z + q with p, q in K0.
    for (std::size_t zi = 1; zi < n; ++zi) {
        const RationalVector z = unit(n, zi);
        const RationalVector yz = multiply_coords(ring, *y, z);
        RationalMatrix rows(4, n, Rational(0));
        const RationalVector one = unit(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            rows(0, k) = one[k];
            rows(1, k) = (*y)[k];
            rows(2, k) = z[k];
            rows(3, k) = yz[k];
        }
        if (rank_of(rows) < 4) continue;
        const auto coef = LatticeCoordinates(rows).coordinates(multiply_coords(ring, z, z));
        if (!coef) return out;
        const Rational q0 = (*coef)[0], q1 = (*coef)[1], p0 = (*coef)[2], p1 = (*coef)[3];
        const Rational u = p0 * p0 + p1 * p1 * c + 4 * q0;
        const Rational v = 2 * p0 * p1 + 4 * q1;
        if (u < 0 && u * u > v * v * c) {
            out.tag = AlgebraTag::CMField;
            out.discriminant_data = {cleared_squarefree(c)};
        }
        return out;
    }
    return out;
}

AlgebraClass classify_quaternion(const EndoRing& ring) {
    AlgebraClass out;
    const std::size_t n = ring.rank();
    RationalMatrix trace(1, n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        Integer t = 0;
        for (std::size_t d = 0; d < 4; ++d) t += ring.basis[k].rational(d, d);
        trace(0, k) = Rational(t);
    }
    const RationalMatrix w = kernel_basis(trace);
    if (w.rows() != 3) return out;
    // q(x) = -x^2 on the trace-zero part; Gram matrix of the associated bilinear form.
    RationalMatrix gram(3, 3, Rational(0));
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            RationalVector s = multiply_coords(ring, w.row(a), w.row(b));
            const RationalVector t = multiply_coords(ring, w.row(b), w.row(a));
            for (std::size_t k = 0; k < n; ++k) s[k] += t[k];
            if (!is_scalar_coords(s)) return out;
            gram(a, b) = -s[0] / 2;
        }
    const Rational m1 = gram(0, 0);
    const Rational m2 = gram(0, 0) * gram(1, 1) - gram(0, 1) * gram(1, 0);
    const Rational m3 = determinant(gram);
    if (m3 == 0) return out;
    out.tag = m1 > 0 && m2 > 0 && m3 > 0 ? AlgebraTag::DefiniteQuaternion : AlgebraTag::IndefiniteQuaternion;

    // Orthogonal basis; (a, b) are the squares of the first two anisotropic vectors.
    std::vector<RationalVector> ortho;
    std::vector<Rational> norms;
    auto form = [&](const RationalVector& x, const RationalVector& y) {
        Rational s = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) s += x[i] * gram(i, j) * y[j];
        return s;
    };
    std::vector<RationalVector> candidates;
    for (std::size_t i = 0; i < 3; ++i) candidates.push_back(unit(3, i));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            RationalVector s = unit(3, i);
            s[j] = 1;
            candidates.push_back(s);
        }
    for (auto x : candidates) {
        for (std::size_t k = 0; k < ortho.size(); ++k) {
            const Rational f = form(x, ortho[k]) / norms[k];
            for (std::size_t i = 0; i < 3; ++i) x[i] -= f * ortho[k][i];
        }
        const Rational nx = form(x, x);
        if (nx == 0) continue;
        ortho.push_back(x);
        norms.push_back(nx);
        if (ortho.size() == 2) break;
    }
    if (ortho.size() < 2) {
        out.tag = AlgebraTag::Other;
        return out;
    }
    out.discriminant_data = {-cleared_squarefree(norms[0]), -cleared_squarefree(norms[1])};
    return out;
}

} // namespace

std::optional<RationalVector> EndoRing::coordinates(const RationalMatrix& r) const {
    return LatticeCoordinates(basis_rows(*this)).coordinates(entries_of(r));
}

RationalMatrix EndoRing::combination(const RationalVector& c) const {
    return RationalMatrix(4, 4, combine_rows(basis_rows(*this), c));
}

EndoRing compute_endo_ring(const Torus& t) {
    const FieldMatrix& p = t.big_period();
    const FieldMatrix& q = t.big_period_inverse();
    // Lower-left block of P R P^-1 vanishes: sum_{k,l} P(a,k) R(k,l) Q(l,b) = 0 for a in {2,3}, b in {0,1}.
    std::vector<FieldVector> forms;
    for (std::size_t a = 2; a < 4; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            FieldVector form;
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t l = 0; l < 4; ++l) form.push_back(p(a, k) * q(l, b));
            forms.push_back(std::move(form));
        }
    RationalMatrix system = expand_rational_conditions(forms, 16);
    // Endomorphisms with R(0,0) = 0 complement the identity.
    RationalMatrix with_corner(system.rows() + 1, 16, Rational(0));
    for (std::size_t r = 0; r < system.rows(); ++r)
        for (std::size_t c = 0; c < 16; ++c) with_corner(r, c) = system(r, c);
    with_corner(system.rows(), 0) = 1;
    const IntegerMatrix rest = integer_kernel(with_corner);

    EndoRing ring{t, {}, {}};
    ring.basis.push_back({integer_identity(4), field_identity(t.field(), 2)});
    for (std::size_t k = 0; k < rest.rows(); ++k) {
        IntegerMatrix r = matrix_from_entries(rest.row(k));
        ring.basis.push_back({r, t.analytic_representation(to_rational(r))});
    }
    ring.structure = structure_constants(ring);
    return ring;
}

std::vector<std::vector<IntegerVector>> structure_constants(const EndoRing& ring) {
    const LatticeCoordinates coords(basis_rows(ring));
    const std::size_t n = ring.rank();
    std::vector<std::vector<IntegerVector>> out(n, std::vector<IntegerVector>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const IntegerMatrix prod = ring.basis[i].rational * ring.basis[j].rational;
            const auto c = coords.coordinates(entries_of(to_rational(prod)));
            if (!c) fail(ErrorKind::NotClosed, "product leaves the rational span of the basis");
            for (const auto& x : *c) {
                if (!is_integer(x)) fail(ErrorKind::NotClosed, "product has non-integral coordinates");
                out[i][j].push_back(x.get_num());
            }
        }
    return out;
}

const char* algebra_tag_name(AlgebraTag tag) {
    switch (tag) {
    case AlgebraTag::RationalField: return "RationalField";
    case AlgebraTag::RealQuadratic: return "RealQuadratic";
    case AlgebraTag::ImaginaryQuadratic: return "ImaginaryQuadratic";
    case AlgebraTag::CMField: return "CMField";
    case AlgebraTag::IndefiniteQuaternion: return "IndefiniteQuaternion";
    case AlgebraTag::DefiniteQuaternion: return "DefiniteQuaternion";
    case AlgebraTag::MatrixAlgebraOverQuadratic: return "MatrixAlgebraOverQuadratic";
    case AlgebraTag::Other: return "Other";
    }
    return "Other";
}

AlgebraClass classify_algebra(const EndoRing& ring) {
    const std::size_t n = ring.rank();
    if (n == 0 || n > 8 || ring.structure.size() != n)
        fail(ErrorKind::UnrecognizedStructure, "endomorphism ring of rank " + std::to_string(n));
    const RationalMatrix z = center_basis(ring);
    const std::size_t center = z.rows();
    AlgebraClass out;
    if (n == 1) {
        out.tag = AlgebraTag::RationalField;
    } else if (n == 2) {
        out = classify_quadratic(ring, unit(n, 1), AlgebraTag::RealQuadratic, AlgebraTag::ImaginaryQuadratic);
    } else if (n == 4 && center == 4) {
        out = classify_commutative_rank4(ring);
    } else if (n == 4 && center == 1) {
        out = classify_quaternion(ring);
    } else if (n == 8 && center == 2) {
        for (std::size_t k = 0; k < z.rows(); ++k) {
            if (is_scalar_coords(z.row(k))) continue;
            out = classify_quadratic(ring, z.row(k), AlgebraTag::MatrixAlgebraOverQuadratic,
                                     AlgebraTag::MatrixAlgebraOverQuadratic);
            break;
        }
    }
    out.center_dimension = center;
    return out;
}

bool is_polarization(const Torus& t, const FieldMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2 || !is_hermitian(m)) return false;
    if (exact_sign(m(0, 0)) != 1 || exact_sign(determinant(m)) != 1) return false;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) {
            const FieldVector x = t.lattice_vector(k), y = t.lattice_vector(l);
            FieldElement h = FieldElement::zero(t.field());
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) h += x[a] * m(a, b) * conjugate(y[b]);
            const FieldElement e = imaginary_part(h);
            if (!e.is_rational() || !is_integer(e.rational_value())) return false;
        }
    return true;
}

RosatiData rosati_involution(const EndoRing& ring, const FieldMatrix& h0) {
    const Torus& t = ring.torus;
    if (!is_polarization(t, h0)) fail(ErrorKind::NotPolarization, "H0 is not positive definite with integral imaginary part");
    const std::size_t n = ring.rank();
    const FieldMatrix mbar = conjugate(h0);
    const FieldMatrix mbar_inv = inverse(mbar);
    RationalMatrix inv(n, n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        const FieldMatrix a = mbar_inv * conjugate_transpose(ring.basis[j].analytic) * mbar;
        const auto r = t.rational_representation(a);
        if (!r) fail(ErrorKind::NotStable, "Rosati image is not rational on the lattice");
        const auto c = ring.coordinates(*r);
        if (!c) fail(ErrorKind::NotStable, "Rosati image leaves End_Q");
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*c)[i];
    }
    if (inv * inv != rational_identity(n)) fail(ErrorKind::NotStable, "Rosati map is not an involution");
    auto image = [&](const RationalVector& x) {
        RationalVector y(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) y[i] += inv(i, j) * x[j];
        return y;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const RationalVector lhs = image(multiply_coords(ring, unit(n, i), unit(n, j)));
            const RationalVector rhs = multiply_coords(ring, image(unit(n, j)), image(unit(n, i)));
            if (lhs != rhs) fail(ErrorKind::NotStable, "Rosati map is not an anti-automorphism");
        }
    return {h0, inv};
}

SymmetricSubspace symmetric_subspace(const RosatiData& ros) {
    RationalMatrix shifted = ros.involution - rational_identity(ros.involution.rows());
    RationalMatrix k = kernel_basis(shifted);
    const std::size_t dim = k.rows();
    return {std::move(k), dim};
}

RealMultiplication find_real_multiplication(const EndoRing& ring, const RosatiData& ros) {
    const SymmetricSubspace sym = symmetric_subspace(ros);
    const std::size_t n = ring.rank();
    std::vector<RationalVector> candidates;
    for (std::size_t k = 0; k < sym.dimension; ++k) candidates.push_back(sym.basis.row(k));
    for (std::size_t a = 0; a < sym.dimension; ++a)
        for (std::size_t b = a + 1; b < sym.dimension; ++b) {
            RationalVector s = sym.basis.row(a);
            for (std::size_t k = 0; k < n; ++k) s[k] += sym.basis(b, k);
            candidates.push_back(s);
        }
    if (sym.dimension >= 2 && sym.dimension <= 6) {
        std::vector<long> v(sym.dimension, -2);
        do {
            RationalVector s(n, Rational(0));
            for (std::size_t a = 0; a < sym.dimension; ++a)
                for (std::size_t k = 0; k < n; ++k) s[k] += v[a] * sym.basis(a, k);
            candidates.push_back(s);
        } while (next_in_box(v, 2));
    }
    bool any_nonscalar = false;
    for (const auto& alpha : candidates) {
        if (is_scalar_coords(alpha)) continue;
        any_nonscalar = true;
        const auto rel = quadratic_relation(ring, alpha);
        if (!rel) continue;
        const Rational t = rel->first;
        const Rational disc = t * t + 4 * rel->second;  // t^2 - 4n for x^2 - t x + n
        if (disc < 0) fail(ErrorKind::NegativeDiscriminant, "symmetric element with negative discriminant");
        const auto sf = squarefree_part(disc.get_num() * disc.get_den());
        if (disc == 0 || sf.value == 1) continue;
        // beta0 = alpha - t/2 squares to disc/4; rescale to a primitive integer matrix.
        RationalVector beta0 = alpha;
        beta0[0] -= t / 2;
        const RationalMatrix r0 = ring.combination(beta0);
        Rational scale = Rational(lcm_of_denominators(r0.data()));
        IntegerMatrix r = to_integer(scaled(r0, scale));
        const Integer g = gcd_of(r.data());
        scale /= Rational(g);
        r = to_integer(scaled(r0, scale));
        const Rational dpp = scale * scale * disc / 4;
        if (r * r != scaled(integer_identity(4), dpp.get_num()))
            fail(ErrorKind::NotClosed, "beta^2 is not the expected scalar");
        const auto red = squarefree_part(dpp.get_num());
        return {red.value, dpp.get_num(), {r, ring.torus.analytic_representation(to_rational(r))}, !red.fully_reduced};
    }
    if (!any_nonscalar) fail(ErrorKind::NoSuchElement, "symmetric subspace is Q * 1");
    fail(ErrorKind::NoSuchElement, "no symmetric element with nonsquare discriminant in the search range");
}

std::vector<IntegerMatrix> endo_box_oracle(const Torus& t, long bound) {
    if (bound > 3) fail(ErrorKind::BoundTooLarge, "box oracle bound " + std::to_string(bound) + " exceeds 3");
    if (bound < 0) fail(ErrorKind::ValidationError, "negative bound");
    const FieldMatrix& j = t.complex_structure();
    // (R J - J R)(a, b) = sum_k R(a,k) J(k,b) - J(a,k) R(k,b)
    std::vector<FieldVector> forms;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            FieldVector form(16, FieldElement::zero(t.field()));
            for (std::size_t k = 0; k < 4; ++k) {
                form[a * 4 + k] += j(k, b);
                form[k * 4 + b] -= j(a, k);
            }
            forms.push_back(std::move(form));
        }
    const EchelonForm ech = row_echelon(expand_rational_conditions(forms, 16));
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < 16; ++c)
        if (std::find(ech.pivots.begin(), ech.pivots.end(), c) == ech.pivots.end()) free_cols.push_back(c);

    std::vector<IntegerMatrix> out;
    std::vector<long> v(free_cols.size(), -bound);
    do {
        IntegerVector entries(16, Integer(0));
        for (std::size_t f = 0; f < free_cols.size(); ++f) entries[free_cols[f]] = v[f];
        bool ok = true;
        for (std::size_t r = 0; r < ech.pivots.size() && ok; ++r) {
            Rational x = 0;
            for (std::size_t f = 0; f < free_cols.size(); ++f) x -= ech.reduced(r, free_cols[f]) * v[f];
            if (!is_integer(x) || abs(x) > bound) ok = false;
            else entries[ech.pivots[r]] = x.get_num();
        }
        if (ok) out.push_back(matrix_from_entries(entries));
    } while (next_in_box(v, bound));
    std::sort(out.begin(), out.end(), [](const IntegerMatrix& a, const IntegerMatrix& b) { return a.data() < b.data(); });
    return out;
}

std::vector<IntegerMatrix> ring_box_elements(const EndoRing& ring, long bound) {
    const RationalMatrix rows = basis_rows(ring);
    const std::vector<std::size_t> pivots = row_echelon(rows).pivots;
    const std::size_t n = ring.rank();
    RationalMatrix square(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) square(i, j) = rows(i, pivots[j]);
    const RationalMatrix square_inv = inverse(square);
    std::vector<IntegerMatrix> out;
    std::vector<long> v(n, -bound);
    do {
        RationalVector c(n, Rational(0));
        bool integral = true;
        for (std::size_t i = 0; i < n && integral; ++i) {
            for (std::size_t j = 0; j < n; ++j) c[i] += v[j] * square_inv(j, i);
            integral = is_integer(c[i]);
        }
        if (!integral) continue;
        const RationalVector x = combine_rows(rows, c);
        if (std::all_of(x.begin(), x.end(), [&](const Rational& e) { return abs(e) <= bound; }))
            out.push_back(to_integer(RationalMatrix(4, 4, x)));
    } while (next_in_box(v, bound));
    std::sort(out.begin(), out.end(), [](const IntegerMatrix& a, const IntegerMatrix& b) { return a.data() < b.data(); });
    return out;
}

} // namespace ctorus
