#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace ctorus {

using Integer = mpz_class;
using Rational = mpq_class; // gmp keeps results in lowest terms with positive denominator

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p" or "p/q" (optional sign); rejects anything else, including decimal points.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// floor(q * 2^bits) / 2^bits and the matching ceiling; used for outward rounding.
Rational round_down(const Rational& q, unsigned long bits);
Rational round_up(const Rational& q, unsigned long bits);

Integer lcm_of_denominators(const std::vector<Rational>& values);
Integer gcd_of(const std::vector<Integer>& values);

bool is_perfect_square(const Integer& n);

struct SquarefreePart {
    Integer value;          // n divided by the largest square found
    Integer square_root;    // n = value * square_root^2
    bool fully_reduced = true;  // false if a cofactor above the trial-division bound may hide a square
};

/// Squarefree reduction by trial division up to 10^6 followed by a perfect-square test on the cofactor.
SquarefreePart squarefree_part(const Integer& n);

/// Best rational approximation with denominator at most max_den (continued fractions).
Rational rationalize(double x, long max_den);

} // namespace ctorus
