#pragma once

#include "ctorus/torus.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ctorus {

struct MultiplicationSpec {
    FieldMatrix d_analytic;  // 2x2
    Integer d;
};

/// A torus description: generators (i is implicit), a 2x4 period matrix and optional multiplications.
struct TorusDocument {
    FieldPtr field;
    FieldMatrix period;
    std::vector<MultiplicationSpec> multiplications;
};

/// Exact rational from "p", "-p" or "p/q"; anything with a decimal point or exponent is a float literal.
Rational parse_rational_literal(const std::string& text);

/// Polynomial expression in the field's generator names: + - * / ^ (integer exponents) and parentheses.
FieldElement parse_expression(const FieldPtr& field, const std::string& text);

/// Throws ParseError (with line and column) on malformed JSON and ValidationError on schema violations.
TorusDocument parse_document(const std::string& text);

nlohmann::json document_json(const TorusDocument& doc);
std::string serialize_document(const TorusDocument& doc);

TorusDocument document_of(const Torus& t, const std::vector<MultiplicationDatum>& mults);

struct LoadedTorus {
    Torus torus;
    std::vector<MultiplicationDatum> mults;
};

/// Builds the torus and attaches every multiplication; errors from either step propagate.
LoadedTorus load_document(const TorusDocument& doc);

} // namespace ctorus
