#pragma once

#include "ctorus/neronseveri.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ctorus {

using Json = nlohmann::json;

enum class ClaimStatus { Verified, Refuted, Skipped };

const char* claim_status_name(ClaimStatus s);

struct Claim {
    std::string id;
    ClaimStatus status = ClaimStatus::Skipped;
    std::string reason;  // empty when verified
    Json witness = Json::object();
};

struct VerificationReport {
    std::vector<Claim> claims;

    bool any_refuted() const;
    bool all_verified() const;
    const Claim* find(const std::string& id) const;
    Json to_json() const;
};

/// Rank of N_D, positivity of N_D (d > 0) or the antidiagonal obstruction (d < 0), the E_{a,b} table
/// and the lambda round trip on the N_D basis. A scalar D skips every claim with reason ScalarD.
VerificationReport verify_proposition(const Torus& t, const MultiplicationDatum& mult);

/// real_mult.*: algebraicity whenever a d > 0 multiplication is attached. imag_mult.*: NS rank >= 3,
/// H0 outside N_D, symmetric dimension >= 3 and a real multiplication, once the torus is certified
/// algebraic and carries a nonscalar d < 0 multiplication.
VerificationReport verify_corollaries(const Torus& t, const std::vector<MultiplicationDatum>& mults);

/// Lattice vectors e1 = lambda_j, e2 = lambda_k (first pair in index order) with e1, e2, De1, De2 independent.
std::optional<std::pair<FieldVector, FieldVector>> choose_d_basis(const Torus& t, const MultiplicationDatum& mult);

Json json_of(const FieldElement& x);
Json json_of(const FieldMatrix& m);
Json json_of(const IntegerMatrix& m);
Json json_of(const RationalMatrix& m);
Json json_of(const IntegerVector& v);
Json json_of(const Integer& z);
Json json_of(const Rational& q);

} // namespace ctorus
