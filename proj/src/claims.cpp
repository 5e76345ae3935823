#include "ctorus/claims.hpp"

#include "ctorus/error.hpp"

namespace ctorus {

namespace {

Claim verified(std::string id, Json witness) { return {std::move(id), ClaimStatus::Verified, "", std::move(witness)}; }

Claim refuted(std::string id, std::string reason, Json witness) {
    return {std::move(id), ClaimStatus::Refuted, std::move(reason), std::move(witness)};
}

Claim skipped(std::string id, std::string reason) { return {std::move(id), ClaimStatus::Skipped, std::move(reason), Json::object()}; }

Json element_json(const NSElement& e) { return {{"alt", json_of(e.alt)}, {"herm", json_of(e.herm)}}; }

Json basis_json(const NSLattice& lattice) {
    Json out = Json::array();
    for (const auto& e : lattice.basis) out.push_back(json_of(e.alt));
    return out;
}

RationalVector alt_entries(const IntegerMatrix& e) {
    RationalVector out;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = k + 1; l < 4; ++l) out.push_back(Rational(e(k, l)));
    return out;
}

bool in_ns_equation(const Torus& t, const IntegerMatrix& e) {
    const FieldMatrix& j = t.complex_structure();
    const FieldMatrix ef = to_field(t.field(), e);
    return j.transposed() * ef * j == ef;
}

Claim positivity_claim(const NSLattice& nd, const MultiplicationDatum& mult) {
    if (mult.d > 0) {
        const std::string id = "nd.positive_definite";
        auto p = polarization_search(nd);
        if (!p) return skipped(id, "NoneFound");
        return verified(id, {{"coefficients", json_of(p->coefficients)}, {"form", element_json(p->form)}});
    }
    const std::string id = "nd.no_positive_definite";
    Json transported = Json::array();
    for (const auto& e : nd.basis) {
        const FieldMatrix mp = transported_form(mult, e.herm);
        if (!mp(0, 0).is_zero() || !mp(1, 1).is_zero())
            return refuted(id, "transport is not antidiagonal", {{"form", element_json(e)}, {"transported", json_of(mp)}});
        if (is_positive_definite(e.herm)) return refuted(id, "positive definite class in N_D", element_json(e));
        transported.push_back(json_of(mp));
    }
    if (!antidiagonal_certificate(nd, mult)) return refuted(id, "antidiagonal certificate failed", Json::object());
    return verified(id, {{"transported", transported}});
}

} // namespace

const char* claim_status_name(ClaimStatus s) {
    switch (s) {
    case ClaimStatus::Verified: return "verified";
    case ClaimStatus::Refuted: return "refuted";
    case ClaimStatus::Skipped: return "skipped";
    }
    return "?";
}

bool VerificationReport::any_refuted() const {
    for (const auto& c : claims)
        if (c.status == ClaimStatus::Refuted) return true;
    return false;
}

bool VerificationReport::all_verified() const {
    for (const auto& c : claims)
        if (c.status != ClaimStatus::Verified) return false;
    return !claims.empty();
}

const Claim* VerificationReport::find(const std::string& id) const {
    for (const auto& c : claims)
        if (c.id == id) return &c;
    return nullptr;
}

Json VerificationReport::to_json() const {
    Json out = Json::array();
    for (const auto& c : claims) {
        Json entry{{"id", c.id}, {"status", claim_status_name(c.status)}, {"witness", c.witness}};
        if (!c.reason.empty()) entry["reason"] = c.reason;
        out.push_back(std::move(entry));
    }
    return out;
}

Json json_of(const FieldElement& x) { return to_string(x); }
Json json_of(const Integer& z) { return to_string(z); }
Json json_of(const Rational& q) { return to_string(q); }

Json json_of(const IntegerVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

namespace {
template <class T>
Json matrix_json(const Matrix<T>& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}
} // namespace

Json json_of(const FieldMatrix& m) { return matrix_json(m); }
Json json_of(const IntegerMatrix& m) { return matrix_json(m); }
Json json_of(const RationalMatrix& m) { return matrix_json(m); }

std::optional<std::pair<FieldVector, FieldVector>> choose_d_basis(const Torus& t, const MultiplicationDatum& mult) {
    const FieldPtr& f = mult.sqrt_d.field();
    const CanonicalFormCoords zero{FieldElement::zero(f), FieldElement::zero(f)};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = j + 1; k < 4; ++k) {
            FieldVector e1 = t.lattice_vector(j), e2 = t.lattice_vector(k);
            try {
                lambda_table(t, mult, e1, e2, zero);
                return std::make_pair(std::move(e1), std::move(e2));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NotABasis) throw;
            }
        }
    return std::nullopt;
}

VerificationReport verify_proposition(const Torus& t, const MultiplicationDatum& mult) {
    VerificationReport rep;
    const std::string sign_id = mult.d > 0 ? "nd.positive_definite" : "nd.no_positive_definite";
    if (mult.is_scalar) {
        for (const char* id : {"nd.rank_two", sign_id.c_str(), "nd.e_table", "nd.lambda_bijective"})
            rep.claims.push_back(skipped(id, "ScalarD"));
        return rep;
    }
    const NSLattice ns = compute_ns(t);
    const NSLattice nd = compute_N_D(ns, mult);

    Json rank_witness{{"d", json_of(mult.d)}, {"ns_rank", ns.rank()}, {"nd_rank", nd.rank()}, {"nd_basis", basis_json(nd)}};
    if (nd.rank() == 2)
        rep.claims.push_back(verified("nd.rank_two", rank_witness));
    else
        rep.claims.push_back(refuted("nd.rank_two", "rank of N_D is " + std::to_string(nd.rank()), rank_witness));

    rep.claims.push_back(positivity_claim(nd, mult));

    const auto basis = choose_d_basis(t, mult);
    if (!basis) {
        rep.claims.push_back(skipped("nd.e_table", "NotABasis"));
        rep.claims.push_back(skipped("nd.lambda_bijective", "NotABasis"));
        return rep;
    }
    const auto& [e1, e2] = *basis;
    Json table_rows = Json::array(), lambda_rows = Json::array();
    std::optional<Claim> table_bad, lambda_bad;
    for (const auto& e : nd.basis) {
        std::optional<CanonicalFormCoords> coords;
        try {
            coords = canonical_form_coordinates(mult, e.herm);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::NotInND) throw;
            table_bad = refuted("nd.e_table", "N_D class without canonical coordinates",
                                {{"form", element_json(e)}, {"transported", json_of(transported_form(mult, e.herm))}});
            break;
        }
        const CanonicalFormCoords& c = *coords;
        const LambdaTable tab = lambda_table(t, mult, e1, e2, c);
        Json row{{"a", json_of(c.a)},
                 {"b", json_of(c.b)},
                 {"u", json_of(tab.u)},
                 {"v", json_of(tab.v)},
                 {"e1_De1", json_of(tab.e1_de1)},
                 {"e2_De2", json_of(tab.e2_de2)},
                 {"e2_De1", json_of(tab.e2_de1)},
                 {"De1_De2", json_of(tab.de1_de2)}};
        const bool table_ok = tab.e1_de1.is_zero() && tab.e2_de2.is_zero() && tab.e2_de1 == -tab.v &&
                              tab.de1_de2 == tab.u * Rational(mult.d) && tab.u.is_rational() && tab.v.is_rational();
        if (!table_ok && !table_bad) table_bad = refuted("nd.e_table", "table identity fails", row);
        table_rows.push_back(row);

        const CanonicalFormCoords back = lambda_inverse(t, mult, e1, e2, tab.u, tab.v);
        Json lrow{{"u", json_of(tab.u)}, {"v", json_of(tab.v)}, {"a", json_of(back.a)}, {"b", json_of(back.b)}};
        if ((back.a != c.a || back.b != c.b) && !lambda_bad)
            lambda_bad = refuted("nd.lambda_bijective", "inverse does not recover (a, b)", lrow);
        lambda_rows.push_back(lrow);
    }
    const Json vectors{{"e1", Json::array({json_of(e1[0]), json_of(e1[1])})}, {"e2", Json::array({json_of(e2[0]), json_of(e2[1])})}};
    rep.claims.push_back(table_bad ? *table_bad : verified("nd.e_table", {{"basis", vectors}, {"rows", table_rows}}));
    rep.claims.push_back(lambda_bad ? *lambda_bad : verified("nd.lambda_bijective", {{"basis", vectors}, {"rows", lambda_rows}}));
    return rep;
}

VerificationReport verify_corollaries(const Torus& t, const std::vector<MultiplicationDatum>& mults) {
    VerificationReport rep;
    bool has_real = false;
    const MultiplicationDatum* imaginary = nullptr;
    for (const auto& m : mults) {
        if (m.d > 0) has_real = true;
        if (m.d < 0 && !m.is_scalar && !imaginary) imaginary = &m;
    }
    const AlgebraicityReport alg = is_algebraic(t, mults);

    const std::string c1 = "real_mult.algebraic";
    if (!has_real)
        rep.claims.push_back(skipped(c1, "NoRealMultiplication"));
    else if (alg.verdict == AlgebraicityVerdict::Algebraic)
        rep.claims.push_back(verified(c1, {{"polarization", element_json(alg.polarization->form)},
                                           {"coefficients", json_of(alg.polarization->coefficients)}}));
    else if (alg.verdict == AlgebraicityVerdict::NotAlgebraic)
        rep.claims.push_back(refuted(c1, "NotAlgebraic", {{"obstruction", alg.obstruction}}));
    else
        rep.claims.push_back(skipped(c1, "Unknown"));

    const char* later[] = {"imag_mult.ns_rank", "imag_mult.h0_outside_nd", "imag_mult.sum_in_ns",
                           "imag_mult.symmetric_dimension", "imag_mult.real_multiplication"};
    std::string why;
    if (!imaginary)
        why = "NoImaginaryMultiplication";
    else if (alg.verdict != AlgebraicityVerdict::Algebraic)
        why = verdict_name(alg.verdict);
    if (!why.empty()) {
        for (const char* id : later) rep.claims.push_back(skipped(id, why));
        return rep;
    }

    const NSLattice ns = compute_ns(t);
    const NSLattice nd = compute_N_D(ns, *imaginary);
    const NSElement& h0 = alg.polarization->form;

    Json rank_w{{"ns_rank", ns.rank()}, {"ns_basis", basis_json(ns)}};
    rep.claims.push_back(ns.rank() >= 3 ? verified(later[0], rank_w) : refuted(later[0], "NS rank below 3", rank_w));

    RationalMatrix rows(nd.rank() + 1, 6, Rational(0));
    for (std::size_t k = 0; k <= nd.rank(); ++k) {
        const RationalVector v = alt_entries(k < nd.rank() ? nd.basis[k].alt : h0.alt);
        for (std::size_t j = 0; j < 6; ++j) rows(k, j) = v[j];
    }
    const bool outside = rank_of(rows) == nd.rank() + 1;
    Json h0_w{{"h0", element_json(h0)}, {"nd_basis", basis_json(nd)}};
    rep.claims.push_back(outside ? verified(later[1], h0_w) : refuted(later[1], "H0 lies in N_D tensor Q", h0_w));

    // Z H0 + N_D sits in NS: every generator solves J^t E J = E and has integer NS coordinates.
    RationalMatrix ns_rows(ns.rank(), 6, Rational(0));
    for (std::size_t k = 0; k < ns.rank(); ++k) {
        const RationalVector v = alt_entries(ns.basis[k].alt);
        for (std::size_t j = 0; j < 6; ++j) ns_rows(k, j) = v[j];
    }
    const LatticeCoordinates ns_coords(ns_rows);
    Json coords = Json::array();
    std::optional<Claim> sum_bad;
    for (std::size_t k = 0; k <= nd.rank(); ++k) {
        const IntegerMatrix& e = k < nd.rank() ? nd.basis[k].alt : h0.alt;
        const auto c = ns_coords.coordinates(alt_entries(e));
        bool integral = c.has_value() && in_ns_equation(t, e);
        Json cj = Json::array();
        if (c)
            for (const auto& x : *c) {
                integral = integral && is_integer(x);
                cj.push_back(to_string(x));
            }
        if (!integral && !sum_bad) sum_bad = refuted(later[2], "generator outside NS", {{"alt", json_of(e)}, {"coordinates", cj}});
        coords.push_back(cj);
    }
    if (!outside && !sum_bad) sum_bad = refuted(later[2], "sum is not direct", h0_w);
    rep.claims.push_back(sum_bad ? *sum_bad : verified(later[2], {{"ns_coordinates", coords}}));

    const EndoRing ring = compute_endo_ring(t);
    const RosatiData ros = rosati_involution(ring, h0.herm);
    const SymmetricSubspace sym = symmetric_subspace(ros);
    Json sym_w{{"end_rank", ring.rank()}, {"dimension", sym.dimension}, {"basis", json_of(sym.basis)}};
    rep.claims.push_back(sym.dimension >= 3 ? verified(later[3], sym_w) : refuted(later[3], "symmetric dimension below 3", sym_w));

    try {
        const RealMultiplication rm = find_real_multiplication(ring, ros);
        const RationalMatrix b = to_rational(rm.beta.rational);
        const bool square_ok = b * b == scaled(rational_identity(4), Rational(rm.d_double_prime)) &&
                               rm.beta.analytic * rm.beta.analytic ==
                                   scaled(field_identity(t.field(), 2), Rational(rm.d_double_prime));
        const bool nonsquare = rm.d_prime > 1 && !is_perfect_square(rm.d_prime);
        Json w{{"d_prime", json_of(rm.d_prime)},
               {"d_double_prime", json_of(rm.d_double_prime)},
               {"beta", json_of(rm.beta.rational)},
               {"beta_analytic", json_of(rm.beta.analytic)}};
        if (square_ok && nonsquare)
            rep.claims.push_back(verified(later[4], w));
        else
            rep.claims.push_back(refuted(later[4], square_ok ? "d' is a square" : "beta^2 differs from d''", w));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoSuchElement && e.kind() != ErrorKind::NegativeDiscriminant) throw;
        rep.claims.push_back(skipped(later[4], std::string(error_kind_name(e.kind()))));
    }
    return rep;
}

} // namespace ctorus
