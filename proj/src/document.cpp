#include "ctorus/document.hpp"

#include "ctorus/error.hpp"

#include <cctype>
#include <set>

namespace ctorus {

using Json = nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
    fail(ErrorKind::ValidationError, where + ": " + what);
}

Rational rational_field(const Json& v, const std::string& where) {
    if (v.is_number_float()) invalid(where, "float literal");
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    if (!v.is_string()) invalid(where, "expected a rational string");
    try {
        return parse_rational_literal(v.get<std::string>());
    } catch (const Error& e) {
        invalid(where, e.detail());
    }
}

Integer integer_field(const Json& v, const std::string& where) {
    const Rational q = rational_field(v, where);
    if (q.get_den() != 1) invalid(where, "expected an integer");
    return q.get_num();
}

Interval interval_field(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) invalid(where, "expected [lo, hi]");
    Interval out{rational_field(v[0], where + "[0]"), rational_field(v[1], where + "[1]")};
    if (out.lo > out.hi) invalid(where, "lo exceeds hi");
    return out;
}

GeneratorSpec generator_field(const Json& g, const std::string& where) {
    if (!g.is_object()) invalid(where, "expected an object");
    for (const auto& [key, _] : g.items())
        if (key != "name" && key != "min_poly" && key != "root" && key != "conj") invalid(where, "unknown key " + key);
    GeneratorSpec out;
    if (!g.contains("name") || !g["name"].is_string()) invalid(where, "missing name");
    out.name = g["name"].get<std::string>();
    if (out.name == "i") invalid(where, "i is predeclared");
    if (!g.contains("min_poly") || !g["min_poly"].is_array()) invalid(where, "missing min_poly");
    for (std::size_t k = 0; k < g["min_poly"].size(); ++k)
        out.min_poly.coeffs.push_back(rational_field(g["min_poly"][k], where + ".min_poly[" + std::to_string(k) + "]"));
    if (out.min_poly.coeffs.size() < 3) invalid(where, "min_poly must have degree at least 2");
    if (out.min_poly.coeffs.back() != 1) invalid(where, "min_poly is not monic");
    if (!g.contains("root") || !g["root"].is_object() || !g["root"].contains("re") || !g["root"].contains("im"))
        invalid(where, "root needs re and im intervals");
    out.root_box = {interval_field(g["root"]["re"], where + ".root.re"), interval_field(g["root"]["im"], where + ".root.im")};
    const std::string conj = g.value("conj", std::string("real"));
    if (conj == "real")
        out.conj = ConjKind::Real;
    else if (conj == "imaginary")
        out.conj = ConjKind::ImaginaryNegation;
    else
        invalid(where, "conj must be real or imaginary");
    return out;
}

FieldMatrix matrix_field(const FieldPtr& f, const Json& v, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!v.is_array() || v.size() != rows) invalid(where, "expected " + std::to_string(rows) + " rows");
    FieldMatrix out = field_zero(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!v[r].is_array() || v[r].size() != cols) invalid(where, "expected " + std::to_string(cols) + " columns");
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string at = where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            const Json& e = v[r][c];
            if (e.is_number_float()) invalid(at, "float literal");
            if (e.is_number_integer()) {
                out(r, c) = FieldElement::from_rational(f, Rational(Integer(e.dump())));
                continue;
            }
            if (!e.is_string()) invalid(at, "expected an expression string");
            try {
                out(r, c) = parse_expression(f, e.get<std::string>());
            } catch (const Error& err) {
                fail(err.kind(), at + ": " + err.detail());
            }
        }
    }
    return out;
}

class ExpressionParser {
public:
    ExpressionParser(const FieldPtr& f, const std::string& text) : f_(f), s_(text) {}

    FieldElement run() {
        FieldElement x = sum();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return x;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::ParseError, "column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FieldElement sum() {
        FieldElement x = product();
        for (;;) {
            if (eat('+'))
                x += product();
            else if (eat('-'))
                x -= product();
            else
                return x;
        }
    }

    FieldElement product() {
        FieldElement x = unary();
        for (;;) {
            if (eat('*')) {
                x *= unary();
            } else if (eat('/')) {
                const FieldElement y = unary();
                if (y.is_zero()) error("division by zero");
                x /= y;
            } else {
                return x;
            }
        }
    }

    FieldElement unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    FieldElement power() {
        FieldElement base = atom();
        if (!eat('^')) return base;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("exponent must be a nonnegative integer");
        const unsigned long e = std::stoul(s_.substr(start, pos_ - start));
        if (e > 64) error("exponent too large");
        FieldElement out = FieldElement::one(f_);
        for (unsigned long k = 0; k < e; ++k) out *= base;
        return out;
    }

    FieldElement atom() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            FieldElement x = sum();
            if (!eat(')')) error("missing ')'");
            return x;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
                fail(ErrorKind::ValidationError, "float literal in '" + s_ + "'");
            return FieldElement::from_rational(f_, Rational(Integer(s_.substr(start, pos_ - start))));
        }
        if (c == '.') fail(ErrorKind::ValidationError, "float literal in '" + s_ + "'");
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (!f_->generator_index(name)) fail(ErrorKind::ValidationError, "unknown generator " + name);
            return FieldElement::generator(f_, name);
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    const FieldPtr& f_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

Json interval_json(const Interval& x) { return Json::array({to_string(x.lo), to_string(x.hi)}); }

Json matrix_json(const FieldMatrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

Rational parse_rational_literal(const std::string& text) {
    if (text.find_first_of(".eE") != std::string::npos) fail(ErrorKind::ValidationError, "float literal '" + text + "'");
    std::size_t k = 0;
    if (k < text.size() && text[k] == '-') ++k;
    const std::size_t num_start = k;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
    if (k == num_start) fail(ErrorKind::ValidationError, "malformed rational '" + text + "'");
    Integer den = 1;
    const Integer num(text.substr(0, k));
    if (k < text.size()) {
        if (text[k] != '/') fail(ErrorKind::ValidationError, "malformed rational '" + text + "'");
        const std::size_t den_start = ++k;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        if (k == den_start || k != text.size()) fail(ErrorKind::ValidationError, "malformed rational '" + text + "'");
        den = Integer(text.substr(den_start));
        if (den == 0) fail(ErrorKind::ValidationError, "zero denominator in '" + text + "'");
    }
    return make_rational(num, den);
}

FieldElement parse_expression(const FieldPtr& field, const std::string& text) { return ExpressionParser(field, text).run(); }

TorusDocument parse_document(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t stop = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
        for (std::size_t k = 0; k < stop; ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) invalid("document", "expected an object");
    for (const auto& [key, _] : doc.items())
        if (key != "generators" && key != "period" && key != "multiplications") invalid("document", "unknown key " + key);

    std::vector<GeneratorSpec> gens;
    std::set<std::string> names;
    if (doc.contains("generators")) {
        if (!doc["generators"].is_array()) invalid("generators", "expected an array");
        for (std::size_t k = 0; k < doc["generators"].size(); ++k) {
            GeneratorSpec g = generator_field(doc["generators"][k], "generators[" + std::to_string(k) + "]");
            if (!names.insert(g.name).second) invalid("generators", "duplicate name " + g.name);
            gens.push_back(std::move(g));
        }
    }
    if (!doc.contains("period")) invalid("document", "missing period");
    const FieldPtr field = NumberField::create(gens);
    TorusDocument out{field, matrix_field(field, doc["period"], 2, 4, "period"), {}};
    if (doc.contains("multiplications")) {
        const Json& ms = doc["multiplications"];
        if (!ms.is_array()) invalid("multiplications", "expected an array");
        for (std::size_t k = 0; k < ms.size(); ++k) {
            const std::string where = "multiplications[" + std::to_string(k) + "]";
            if (!ms[k].is_object() || !ms[k].contains("D") || !ms[k].contains("d")) invalid(where, "needs D and d");
            out.multiplications.push_back(
                {matrix_field(out.field, ms[k]["D"], 2, 2, where + ".D"), integer_field(ms[k]["d"], where + ".d")});
        }
    }
    return out;
}

Json document_json(const TorusDocument& doc) {
    Json gens = Json::array();
    for (const auto& g : doc.field->generators()) {
        if (g.name == "i") continue;
        Json poly = Json::array();
        for (const auto& c : g.min_poly.coeffs) poly.push_back(to_string(c));
        gens.push_back({{"name", g.name},
                        {"min_poly", poly},
                        {"root", {{"re", interval_json(g.root_box.re)}, {"im", interval_json(g.root_box.im)}}},
                        {"conj", g.conj == ConjKind::Real ? "real" : "imaginary"}});
    }
    Json mults = Json::array();
    for (const auto& m : doc.multiplications) {
        Json d = m.d.fits_slong_p() ? Json(m.d.get_si()) : Json(to_string(m.d));
        mults.push_back({{"D", matrix_json(m.d_analytic)}, {"d", d}});
    }
    return {{"generators", gens}, {"period", matrix_json(doc.period)}, {"multiplications", mults}};
}

std::string serialize_document(const TorusDocument& doc) { return document_json(doc).dump(2) + "\n"; }

TorusDocument document_of(const Torus& t, const std::vector<MultiplicationDatum>& mults) {
    TorusDocument out{t.field(), t.period(), {}};
    for (const auto& m : mults) out.multiplications.push_back({lifted_to(m.d_analytic, t.field()), m.d});
    return out;
}

LoadedTorus load_document(const TorusDocument& doc) {
    LoadedTorus out{build_torus(doc.period), {}};
    for (const auto& m : doc.multiplications) out.mults.push_back(attach_multiplication(out.torus, m.d_analytic, m.d));
    return out;
}

} // namespace ctorus
