// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include "ctorus/cli.hpp"
#include "ctorus/examples.hpp"
#include "ctorus/claims.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace ctorus;

namespace {

const std::string kData = CTORUS_DATA_DIR;

// Collects failure notes for one criterion.
struct Check {
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) notes.push_back(what);
    }
};

FieldElement rational_in(const FieldPtr& f, const Rational& q) { return FieldElement::from_rational(f, q); }

bool criterion1(Check& c) {
    struct Case {
        long m;
        GeneratorSpec r;
    };
    const Case cases[] = {{1, GeneratorSpec::real_root("r", 3, 2)}, {2, GeneratorSpec::real_root("r", 3, 3)}};
    for (const auto& k : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto ex = example1(k.m, k.r);
        const EndoRing ring = compute_endo_ring(ex.torus);
        const AlgebraClass cls = classify_algebra(ring);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string tag = "m=" + std::to_string(k.m) + ": ";
        c.require(ring.rank() == 2, tag + "End rank " + std::to_string(ring.rank()));
        c.require(cls.tag == AlgebraTag::ImaginaryQuadratic, tag + "tag " + algebra_tag_name(cls.tag));
        c.require(cls.discriminant_data == std::vector<Integer>{Integer(-k.m)}, tag + "discriminant data");
        c.require(secs < 10, tag + "took " + std::to_string(secs) + " s");
    }
    return c.notes.empty();
}

bool criterion2(Check& c) {
    for (const auto& [m, n] : {std::pair<long, long>{1, 2}, {2, 3}}) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::string tag = "(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + "): ";
        const auto ex = example2(m, n);
        const EndoRing ring = compute_endo_ring(ex.torus);
        c.require(ring.rank() == 4, tag + "End rank " + std::to_string(ring.rank()));
        const FieldPtr& f = ex.torus.field();
        const FieldElement sm = sqrt_negative(f, m), sn = sqrt_negative(f, n);
        const FieldElement one = FieldElement::one(f), zero = FieldElement::zero(f);
        const FieldMatrix big_i = diagonal({sm, -sm});
        const FieldMatrix big_j(2, 2, {zero, one + sn * Rational(2), -one + sn * Rational(2), zero});
        const FieldMatrix big_k = big_i * big_j;
        const FieldMatrix id = field_identity(f, 2);
        c.require(big_i * big_i == scaled(id, Rational(-m)), tag + "I^2 != -m");
        c.require(big_j * big_j == scaled(id, Rational(-1 - 4 * n)), tag + "J^2 != -1-4n");
        c.require(big_i * big_j == scaled(big_j * big_i, Rational(-1)), tag + "IJ != -JI");
        if (ring.rank() == 4) {
            RationalMatrix change(4, 4, Rational(0));
            const FieldMatrix elems[4] = {id, big_i, big_j, big_k};
            bool all_in = true;
            for (std::size_t k = 0; k < 4; ++k) {
                const auto r = ex.torus.rational_representation(elems[k]);
                const auto coords = r ? ring.coordinates(*r) : std::nullopt;
                if (!coords) {
                    all_in = false;
                    continue;
                }
                for (std::size_t j = 0; j < 4; ++j) change(k, j) = (*coords)[j];
            }
            c.require(all_in, tag + "1, I, J, K not all in End");
            bool integral = true;
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t j = 0; j < 4; ++j) integral = integral && is_integer(change(k, j));
            const Rational det = determinant(change);
            c.require(all_in && integral && (det == 1 || det == -1), tag + "change of basis to 1, I, J, K is not unimodular");
        }
        const AlgebraClass cls = classify_algebra(ring);
        c.require(cls.tag == AlgebraTag::DefiniteQuaternion, tag + "tag " + algebra_tag_name(cls.tag));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.require(secs < 30, tag + "took " + std::to_string(secs) + " s");
    }
    return c.notes.empty();
}

bool criterion3(Check& c) {
    for (long m : {1L, 2L}) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::string tag = "m=" + std::to_string(m) + ": ";
        const Torus t = scalar_cm_product(m);
        const EndoRing ring = compute_endo_ring(t);
        const AlgebraClass cls = classify_algebra(ring);
        c.require(ring.rank() == 8, tag + "End rank " + std::to_string(ring.rank()));
        c.require(cls.tag == AlgebraTag::MatrixAlgebraOverQuadratic, tag + "tag " + algebra_tag_name(cls.tag));
        c.require(cls.discriminant_data == std::vector<Integer>{Integer(-m)}, tag + "discriminant data");
        c.require(compute_ns(t).rank() == 4, tag + "NS rank");
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.require(secs < 30, tag + "took " + std::to_string(secs) + " s");
    }
    return c.notes.empty();
}

struct SuiteCase {
    long d;
    unsigned seed;
    TorusWithMultiplication ex;
};

std::vector<SuiteCase> proposition_suite() {
    std::vector<SuiteCase> out;
    for (long d : {2L, 3L, 5L, -1L, -2L, -5L})
        for (unsigned seed = 1; seed <= 20; ++seed) out.push_back({d, seed, random_torus_with_sqrt_d(d, seed)});
    return out;
}

bool criterion4(Check& c, const std::vector<SuiteCase>& suite) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t refuted = 0;
    for (const auto& s : suite) {
        const std::string tag = "d=" + std::to_string(s.d) + " seed " + std::to_string(s.seed) + ": ";
        const NSLattice nd = compute_N_D(compute_ns(s.ex.torus), s.ex.mult);
        c.require(nd.rank() == 2, tag + "N_D rank " + std::to_string(nd.rank()));
        if (s.d > 0) {
            const auto p = polarization_search(nd);
            c.require(p.has_value() && is_positive_definite(p->form.herm), tag + "no polarization inside N_D");
        } else {
            c.require(antidiagonal_certificate(nd, s.ex.mult), tag + "antidiagonal certificate fails");
        }
        const VerificationReport rep = verify_proposition(s.ex.torus, s.ex.mult);
        if (rep.any_refuted()) ++refuted;
        c.require(rep.all_verified(), tag + "verify_proposition has unverified claims");
    }
    c.require(refuted == 0, std::to_string(refuted) + " runs with refuted claims");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 600, "took " + std::to_string(secs) + " s");
    return c.notes.empty();
}

bool criterion5(Check& c, const std::vector<SuiteCase>& suite) {
    std::mt19937_64 rng(5);
    auto draw = [&] {
        return make_rational(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 50) + 1);
    };
    for (const auto& s : suite) {
        const std::string tag = "d=" + std::to_string(s.d) + " seed " + std::to_string(s.seed) + ": ";
        const Torus& t = s.ex.torus;
        const MultiplicationDatum& mult = s.ex.mult;
        const auto basis = choose_d_basis(t, mult);
        if (!basis) {
            c.require(false, tag + "no basis e1, e2");
            continue;
        }
        const auto& [e1, e2] = *basis;
        const FieldPtr& f = mult.sqrt_d.field();
        // the table on the N_D basis, where u and v are the defining entries
        for (const auto& e : compute_N_D(compute_ns(t), mult).basis) {
            const CanonicalFormCoords co = canonical_form_coordinates(mult, e.herm);
            const LambdaTable tab = lambda_table(t, mult, e1, e2, co);
            c.require(tab.e1_de1.is_zero() && tab.e2_de2.is_zero(), tag + "E(e_k, D e_k) != 0");
            c.require(tab.e2_de1 == -tab.v, tag + "E(e2, De1) != -v");
            c.require(tab.de1_de2 == tab.u * Rational(s.d), tag + "E(De1, De2) != d u");
            c.require(tab.u.is_rational() && tab.v.is_rational(), tag + "u, v not rational on N_D");
        }
        for (int k = 0; k < 100; ++k) {
            const Rational u = draw(), v = draw();
            const CanonicalFormCoords co = lambda_inverse(t, mult, e1, e2, rational_in(f, u), rational_in(f, v));
            const auto back = lambda_map(t, mult, e1, e2, co);
            if (back.first != rational_in(f, u) || back.second != rational_in(f, v)) {
                c.require(false, tag + "lambda(lambda^-1(u, v)) != (u, v)");
                break;
            }
        }
    }
    return c.notes.empty();
}

bool criterion6(Check& c, const std::vector<SuiteCase>& suite) {
    for (const auto& s : suite) {
        if (s.d < 0) continue;
        const std::string tag = "d=" + std::to_string(s.d) + " seed " + std::to_string(s.seed) + ": ";
        const AlgebraicityReport rep = is_algebraic(s.ex.torus, {s.ex.mult});
        c.require(rep.verdict == AlgebraicityVerdict::Algebraic, tag + verdict_name(rep.verdict));
        if (!rep.polarization) continue;
        const NSElement& h = rep.polarization->form;
        const FieldMatrix ef = to_field(s.ex.torus.field(), h.alt);
        const FieldMatrix& j = s.ex.torus.complex_structure();
        c.require(j.transposed() * ef * j == ef, tag + "certificate violates J^t E J = E");
        c.require(alternating_values(s.ex.torus, h.herm) == ef, tag + "Im H differs from E");
        c.require(is_positive_definite(h.herm) && is_polarization(s.ex.torus, h.herm), tag + "certificate not positive definite");
    }
    return c.notes.empty();
}

bool criterion7(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const Torus t = scalar_cm_product(1);
    const FieldElement i = FieldElement::generator(t.field(), "i");
    const MultiplicationDatum mult = attach_multiplication(t, diagonal({i, -i}), -1);
    const VerificationReport rep = verify_corollaries(t, {mult});
    for (const char* id : {"imag_mult.ns_rank", "imag_mult.h0_outside_nd", "imag_mult.sum_in_ns",
                           "imag_mult.symmetric_dimension", "imag_mult.real_multiplication"}) {
        const Claim* cl = rep.find(id);
        c.require(cl && cl->status == ClaimStatus::Verified, std::string(id) + " not verified");
    }
    // independent re-checks of the witnesses
    const NSLattice ns = compute_ns(t);
    c.require(ns.rank() == 4, "NS rank " + std::to_string(ns.rank()));
    const AlgebraicityReport alg = is_algebraic(t, {mult});
    if (!alg.polarization) {
        c.require(false, "no certified H0");
        return false;
    }
    const NSElement& h0 = alg.polarization->form;
    const NSLattice nd = compute_N_D(ns, mult);
    RationalMatrix rows(nd.rank() + 1, 16, Rational(0));
    for (std::size_t k = 0; k <= nd.rank(); ++k) {
        const IntegerMatrix& e = k < nd.rank() ? nd.basis[k].alt : h0.alt;
        for (std::size_t j = 0; j < 16; ++j) rows(k, j) = Rational(e(j / 4, j % 4));
    }
    c.require(rank_of(rows) == nd.rank() + 1, "H0 inside N_D tensor Q");
    const EndoRing ring = compute_endo_ring(t);
    const RosatiData ros = rosati_involution(ring, h0.herm);
    c.require(symmetric_subspace(ros).dimension >= 3, "symmetric dimension below 3");
    const RealMultiplication rm = find_real_multiplication(ring, ros);
    const IntegerMatrix& b = rm.beta.rational;
    c.require(rm.d_prime > 1 && !is_perfect_square(rm.d_prime), "d' is not a positive nonsquare");
    c.require(b * b == scaled(integer_identity(4), rm.d_double_prime), "beta^2 != d'' identity");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 60, "took " + std::to_string(secs) + " s");
    return c.notes.empty();
}

bool criterion8(Check& c) {
    const auto ex1 = example1(1);
    const auto ex2 = example2(1, 2);
    struct Case {
        const char* name;
        const TorusWithMultiplication* ex;
    };
    for (const Case& k : {Case{"Example 1", &ex1}, Case{"Example 2", &ex2}}) {
        const AlgebraicityReport rep = is_algebraic(k.ex->torus, {k.ex->mult});
        c.require(rep.verdict == AlgebraicityVerdict::NotAlgebraic, std::string(k.name) + ": " + verdict_name(rep.verdict));
        c.require(!rep.obstruction.empty(), std::string(k.name) + ": no certificate named");
        const NSLattice ns = compute_ns(k.ex->torus);
        const std::size_t oracle_rank = oracle::ns_rank(k.ex->torus);
        c.require(ns.rank() == oracle_rank, std::string(k.name) + ": NS rank " + std::to_string(ns.rank()) + " vs oracle " +
                                                std::to_string(oracle_rank));
        // the certificate itself, re-run on the computed lattice
        const bool sound = antidiagonal_certificate(ns, k.ex->mult) || determinant_form_certificate(ns);
        c.require(sound, std::string(k.name) + ": certificate does not re-check");
    }
    return c.notes.empty();
}

bool criterion9(Check& c) {
    for (const auto& [name, t] : {std::pair<const char*, Torus>{"Example 1", example1(1).torus}, {"scalar", scalar_cm_product(1)}}) {
        std::vector<IntegerMatrix> oracle = endo_box_oracle(t, 1);
        std::vector<IntegerMatrix> ring = ring_box_elements(compute_endo_ring(t), 1);
        auto key = [](const IntegerMatrix& m) {
            std::vector<long> v;
            for (const auto& x : m.data()) v.push_back(x.get_si());
            return v;
        };
        auto less = [&](const IntegerMatrix& a, const IntegerMatrix& b) { return key(a) < key(b); };
        std::sort(oracle.begin(), oracle.end(), less);
        std::sort(ring.begin(), ring.end(), less);
        c.require(oracle == ring, std::string(name) + ": oracle " + std::to_string(oracle.size()) + " elements, ring " +
                                      std::to_string(ring.size()));
    }
    return c.notes.empty();
}

bool criterion10(Check& c) {
    auto run = [](const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
        std::ostringstream o, e;
        const int code = run_command(args, o, e);
        if (out) *out = o.str();
        if (err) *err = e.str();
        return code;
    };
    const std::string good = kData + "/random_d2_seed1.json";
    c.require(run({"verify-prop", good, "--mult", "0"}) == 0, "verify-prop on a d > 0 document does not exit 0");

    std::ifstream in(good);
    std::ostringstream s;
    s << in.rdbuf();
    nlohmann::json doc = nlohmann::json::parse(s.str());
    doc["period"][0][0] = doc["period"][0][0].get<std::string>() + " + 1";
    const std::string bad_path = "acceptance_corrupt.json";
    std::ofstream(bad_path) << doc.dump(2);
    std::string err;
    const int code = run({"verify-prop", bad_path, "--mult", "0"}, nullptr, &err);
    std::remove(bad_path.c_str());
    c.require(code == 2, "corrupted document exits " + std::to_string(code));
    c.require(err.find("NotAnEndomorphism") != std::string::npos, "corrupted document error: " + err);

    for (const auto& args : std::vector<std::vector<std::string>>{{"verify-prop", good, "--mult", "0", "--json"},
                                                                  {"endo", kData + "/example2_m1_n2.json", "--json"},
                                                                  {"verify-cor", kData + "/scalar_m1.json", "--json"},
                                                                  {"polarize", kData + "/example1_m1.json", "--json"}}) {
        std::string a, b;
        run(args, &a);
        run(args, &b);
        c.require(!a.empty() && a == b, args[0] + " --json differs between runs");
    }
    return c.notes.empty();
}

} // namespace

int main() {
    const std::vector<SuiteCase> suite = proposition_suite();
    const std::vector<std::pair<const char*, std::function<bool(Check&)>>> criteria = {
        {"Example 1 reproduction", criterion1},
        {"Example 2 reproduction", criterion2},
        {"scalar case", criterion3},
        {"N_D rank and positivity suite", [&](Check& c) { return criterion4(c, suite); }},
        {"E-table and lambda", [&](Check& c) { return criterion5(c, suite); }},
        {"algebraicity under real multiplication", [&](Check& c) { return criterion6(c, suite); }},
        {"NS rank, H0 and real multiplication under imaginary multiplication", criterion7},
        {"non-algebraicity", criterion8},
        {"oracle equivalence", criterion9},
        {"CLI contract", criterion10},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[k].second(c);
        } catch (const std::exception& e) {
            c.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %zu %s (%.2f s)\n", ok ? "PASS" : "FAIL", k + 1, criteria[k].first, secs);
        for (std::size_t n = 0; n < c.notes.size() && n < 10; ++n) std::printf("    %s\n", c.notes[n].c_str());
        if (!ok) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
