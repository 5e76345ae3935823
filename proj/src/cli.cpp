#include "ctorus/cli.hpp"

#include "ctorus/document.hpp"
#include "ctorus/examples.hpp"
#include "ctorus/claims.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace ctorus {

namespace {

struct Options {
    bool json = false;
    unsigned long precision = 128;
    std::uint64_t seed = 0;
    std::string output;
    std::string file;
    std::size_t mult = 0;
    std::string kind;
    long m = 1, n = 2, d = 2, r = 2;
};

struct Result {
    std::string command;
    Json claims = Json::array();
    Json witnesses = Json::object();
    Json approx = Json::object();
    std::ostringstream text;
    int code = ExitOk;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::ValidationError, "cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Truncated decimal expansion with `digits` fractional digits.
std::string decimal(const Rational& q, unsigned long digits) {
    Integer scale = 1;
    for (unsigned long k = 0; k < digits; ++k) scale *= 10;
    const Rational a = abs(q) * scale;
    Integer t = a.get_num() / a.get_den();
    std::string s = t.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return (q < 0 ? "-" : "") + s;
}

Json approx_period(const Torus& t, unsigned long bits) {
    const auto digits = static_cast<unsigned long>(std::ceil(static_cast<double>(bits) * 0.30103));
    Json rows = Json::array();
    for (std::size_t r = 0; r < 2; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < 4; ++c) {
            const ComplexBox b = embed(t.period()(r, c), bits);
            row.push_back(Json::array({decimal(b.re.midpoint(), digits), decimal(b.im.midpoint(), digits)}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

LoadedTorus load(const Options& o, Result& res) {
    LoadedTorus lt = load_document(parse_document(read_file(o.file)));
    res.approx["period"] = approx_period(lt.torus, o.precision);
    res.witnesses["file"] = o.file;
    return lt;
}

const MultiplicationDatum& pick_mult(const LoadedTorus& lt, std::size_t k) {
    if (k >= lt.mults.size())
        fail(ErrorKind::ValidationError, "--mult " + std::to_string(k) + " but the document has " +
                                             std::to_string(lt.mults.size()) + " multiplications");
    return lt.mults[k];
}

Json classification_json(const AlgebraClass& c) {
    Json data = Json::array();
    for (const auto& x : c.discriminant_data) data.push_back(to_string(x));
    return {{"tag", algebra_tag_name(c.tag)}, {"discriminant_data", data}, {"center_dimension", c.center_dimension}};
}

std::string data_text(const AlgebraClass& c) {
    std::string s;
    for (const auto& x : c.discriminant_data) s += (s.empty() ? "" : ", ") + to_string(x);
    return "[" + s + "]";
}

Json form_json(const NSElement& e) { return {{"alt", json_of(e.alt)}, {"herm", json_of(e.herm)}}; }

void cmd_endo(const Options& o, Result& res) {
    const LoadedTorus lt = load(o, res);
    const EndoRing ring = compute_endo_ring(lt.torus);
    const AlgebraClass c = classify_algebra(ring);
    Json basis = Json::array(), structure = Json::array();
    for (const auto& e : ring.basis) basis.push_back({{"rational", json_of(e.rational)}, {"analytic", json_of(e.analytic)}});
    for (const auto& row : ring.structure) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(json_of(v));
        structure.push_back(std::move(r));
    }
    res.witnesses["rank"] = ring.rank();
    res.witnesses["basis"] = basis;
    res.witnesses["structure"] = structure;
    res.witnesses["classification"] = classification_json(c);
    res.text << "End rank " << ring.rank() << "\n";
    res.text << "classification " << algebra_tag_name(c.tag) << " " << data_text(c) << " center dimension "
             << c.center_dimension << "\n";
    for (std::size_t k = 0; k < ring.rank(); ++k) {
        res.text << "basis " << k << " analytic [";
        const FieldMatrix& a = ring.basis[k].analytic;
        for (std::size_t r = 0; r < 2; ++r)
            res.text << (r ? "; " : "") << to_string(a(r, 0)) << ", " << to_string(a(r, 1));
        res.text << "]\n";
    }
}

void cmd_classify(const Options& o, Result& res) {
    const LoadedTorus lt = load(o, res);
    const EndoRing ring = compute_endo_ring(lt.torus);
    const AlgebraClass c = classify_algebra(ring);
    res.witnesses["end_rank"] = ring.rank();
    res.witnesses["classification"] = classification_json(c);
    res.text << algebra_tag_name(c.tag) << " " << data_text(c) << " (End rank " << ring.rank() << ", center dimension "
             << c.center_dimension << ")\n";
}

void cmd_ns(const Options& o, Result& res) {
    const LoadedTorus lt = load(o, res);
    const NSLattice ns = compute_ns(lt.torus);
    Json basis = Json::array();
    for (const auto& e : ns.basis) basis.push_back(form_json(e));
    res.witnesses["rank"] = ns.rank();
    res.witnesses["basis"] = basis;
    res.text << "NS rank " << ns.rank() << "\n";
    for (std::size_t k = 0; k < ns.rank(); ++k) {
        const FieldMatrix& m = ns.basis[k].herm;
        res.text << "H" << k << " = [" << to_string(m(0, 0)) << ", " << to_string(m(0, 1)) << "; " << to_string(m(1, 0))
                 << ", " << to_string(m(1, 1)) << "]\n";
    }
}

void cmd_nd(const Options& o, Result& res) {
    const LoadedTorus lt = load(o, res);
    const MultiplicationDatum& mult = pick_mult(lt, o.mult);
    const NSLattice ns = compute_ns(lt.torus);
    const NSLattice nd = compute_N_D(ns, mult);
    Json basis = Json::array();
    res.text << "N_D rank " << nd.rank() << " inside NS rank " << ns.rank() << " (d = " << to_string(mult.d) << ")\n";
    for (const auto& e : nd.basis) {
        const CanonicalFormCoords c = canonical_form_coordinates(mult, e.herm);
        Json j = form_json(e);
        j["a"] = json_of(c.a);
        j["b"] = json_of(c.b);
        basis.push_back(std::move(j));
        res.text << "(a, b) = (" << to_string(c.a) << ", " << to_string(c.b) << ")\n";
    }
    res.witnesses["mult"] = o.mult;
    res.witnesses["d"] = to_string(mult.d);
    res.witnesses["ns_rank"] = ns.rank();
    res.witnesses["rank"] = nd.rank();
    res.witnesses["basis"] = basis;
}

void cmd_polarize(const Options& o, Result& res) {
    const LoadedTorus lt = load(o, res);
    const AlgebraicityReport rep = is_algebraic(lt.torus, lt.mults);
    res.witnesses["verdict"] = verdict_name(rep.verdict);
    res.witnesses["ns_rank"] = rep.ns_rank;
    res.witnesses["obstruction"] = rep.obstruction;
    if (rep.polarization) {
        res.witnesses["polarization"] = {{"coefficients", json_of(rep.polarization->coefficients)},
                                         {"form", form_json(rep.polarization->form)}};
    } else {
        res.witnesses["polarization"] = nullptr;
    }
    res.text << verdict_name(rep.verdict) << " (NS rank " << rep.ns_rank << ")";
    if (!rep.obstruction.empty()) res.text << ": " << rep.obstruction;
    res.text << "\n";
    if (rep.polarization) {
        const FieldMatrix& m = rep.polarization->form.herm;
        res.text << "polarization [" << to_string(m(0, 0)) << ", " << to_string(m(0, 1)) << "; " << to_string(m(1, 0))
                 << ", " << to_string(m(1, 1)) << "]\n";
    }
}

void report_claims(const VerificationReport& rep, Result& res) {
    res.claims = rep.to_json();
    for (const auto& c : rep.claims) {
        res.text << claim_status_name(c.status) << " " << c.id;
        if (!c.reason.empty()) res.text << " (" << c.reason << ")";
        res.text << "\n";
    }
    if (rep.any_refuted()) res.code = ExitRefuted;
}

void cmd_verify_prop(const Options& o, Result& res) {
    const LoadedTorus lt = load(o, res);
    const MultiplicationDatum& mult = pick_mult(lt, o.mult);
    res.witnesses["mult"] = o.mult;
    res.witnesses["d"] = to_string(mult.d);
    report_claims(verify_proposition(lt.torus, mult), res);
}

void cmd_verify_cor(const Options& o, Result& res) {
    const LoadedTorus lt = load(o, res);
    res.witnesses["multiplications"] = lt.mults.size();
    report_claims(verify_corollaries(lt.torus, lt.mults), res);
}

void cmd_gen_example(const Options& o, Result& res, std::string& document_out) {
    TorusDocument doc = [&] {
        if (o.kind == "1") {
            const auto ex = example1(o.m, GeneratorSpec::real_root("r", 3, o.r));
            return document_of(ex.torus, {ex.mult});
        }
        if (o.kind == "2") {
            const auto ex = example2(o.m, o.n);
            return document_of(ex.torus, {ex.mult});
        }
        if (o.kind == "scalar") {
            const Torus t = scalar_cm_product(o.m);
            const FieldElement s = sqrt_negative(t.field(), o.m);
            return document_of(t, {attach_multiplication(t, diagonal({s, -s}), -o.m)});
        }
        if (o.kind == "random") {
            const auto ex = random_torus_with_sqrt_d(o.d, o.seed);
            return document_of(ex.torus, {ex.mult});
        }
        fail(ErrorKind::ValidationError, "unknown example kind " + o.kind);
    }();
    document_out = serialize_document(doc);
    res.witnesses["kind"] = o.kind;
    res.witnesses["output"] = o.output;
    res.approx["period"] = approx_period(build_torus(doc.period), o.precision);
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Endomorphisms, Neron-Severi lattices and polarizations of complex 2-tori", "ctorus"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json, "emit the JSON report");
    app.add_option("--precision", o.precision, "bits for approximate embeddings")->check(CLI::Range(8ul, 4096ul));
    app.add_option("--seed", o.seed, "seed for random examples");
    app.add_option("-o", o.output, "output file for gen-example");

    auto file_command = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("file", o.file, "torus document")->required();
        return sub;
    };
    CLI::App* endo = file_command("endo", "endomorphism ring, structure constants and classification");
    CLI::App* ns = file_command("ns", "Neron-Severi lattice");
    CLI::App* nd = file_command("nd", "sublattice N_D for one multiplication");
    nd->add_option("--mult", o.mult, "index of the multiplication");
    CLI::App* polarize = file_command("polarize", "polarization search and algebraicity verdict");
    CLI::App* classify = file_command("classify", "classify End tensor Q");
    CLI::App* vprop = file_command("verify-prop", "check the N_D statements for one multiplication");
    vprop->add_option("--mult", o.mult, "index of the multiplication");
    CLI::App* vcor = file_command("verify-cor", "check the consequences of real and imaginary multiplication");
    CLI::App* gen = app.add_subcommand("gen-example", "write a torus document for a built-in example");
    gen->add_option("kind", o.kind, "1, 2, scalar or random")->required()->check(CLI::IsMember({"1", "2", "scalar", "random"}));
    gen->add_option("--m", o.m, "m for examples 1, 2 and scalar");
    gen->add_option("--n", o.n, "n for example 2");
    gen->add_option("--r", o.r, "example 1 uses r = cube root of this integer");
    gen->add_option("--d", o.d, "d for random");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return ExitInputError;
    }

    Result res;
    std::string document;
    try {
        if (endo->parsed()) res.command = "endo", cmd_endo(o, res);
        else if (ns->parsed()) res.command = "ns", cmd_ns(o, res);
        else if (nd->parsed()) res.command = "nd", cmd_nd(o, res);
        else if (polarize->parsed()) res.command = "polarize", cmd_polarize(o, res);
        else if (classify->parsed()) res.command = "classify", cmd_classify(o, res);
        else if (vprop->parsed()) res.command = "verify-prop", cmd_verify_prop(o, res);
        else if (vcor->parsed()) res.command = "verify-cor", cmd_verify_cor(o, res);
        else if (gen->parsed()) res.command = "gen-example", cmd_gen_example(o, res, document);
    } catch (const Error& e) {
        err << "error: " << error_kind_name(e.kind()) << ": " << e.detail() << "\n";
        return is_input_error(e.kind()) ? ExitInputError : ExitInternal;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return ExitInternal;
    }

    if (!document.empty()) {
        if (o.output.empty()) {
            out << document;
            return res.code;
        }
        std::ofstream f(o.output, std::ios::binary);
        if (!(f << document)) {
            err << "error: cannot write " << o.output << "\n";
            return ExitInputError;
        }
        res.text << "wrote " << o.output << "\n";
    }
    if (o.json) {
        const Json report{{"command", res.command}, {"claims", res.claims}, {"witnesses", res.witnesses}, {"approx", res.approx}};
        out << report.dump(2) << "\n";
    } else {
        out << res.text.str();
    }
    return res.code;
}

} // namespace ctorus
