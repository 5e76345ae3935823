#include "ctorus/rational.hpp"

#include "ctorus/error.hpp"

#include <cctype>
#include <cmath>

namespace ctorus {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        fail(ErrorKind::ValidationError, "not an exact rational literal: '" + text + "'");
    Integer n(num, 10), d(den, 10);
    if (d == 0) fail(ErrorKind::ValidationError, "zero denominator in '" + text + "'");
    Rational q = make_rational(n, d);
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational round_down(const Rational& q, unsigned long bits) {
    if (q.get_den() == 1) return q;
    Integer scaled = q.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    return make_rational(f, den);
}

Rational round_up(const Rational& q, unsigned long bits) {
    if (q.get_den() == 1) return q;
    Integer scaled = q.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    return make_rational(c, den);
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
    Integer l = 1;
    for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    return l;
}

Integer gcd_of(const std::vector<Integer>& values) {
    Integer g = 0;
    for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

bool is_perfect_square(const Integer& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

SquarefreePart squarefree_part(const Integer& n) {
    SquarefreePart out;
    out.value = n;
    out.square_root = 1;
    if (n == 0) return out;
    Integer m = abs(n);
    Integer value = 1;
    constexpr unsigned long kTrialBound = 1000000;
    for (unsigned long p = 2; p <= kTrialBound; ++p) {
        Integer pp = p;
        if (pp * pp > m) break;
        unsigned exponent = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++exponent;
        }
        for (unsigned k = 0; k < exponent / 2; ++k) out.square_root *= p;
        if (exponent % 2 == 1) value *= p;
    }
    // m is now 1, a prime, or a product of primes above the trial bound.
    if (m > 1) {
        Integer limit = kTrialBound;
        if (is_perfect_square(m)) {
            Integer root;
            mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
            out.square_root *= root;
        } else {
            value *= m;
            if (m > limit * limit) out.fully_reduced = false;
        }
    }
    out.value = n < 0 ? Integer(-value) : value;
    return out;
}

Rational rationalize(double x, long max_den) {
    if (!std::isfinite(x)) fail(ErrorKind::ValidationError, "cannot rationalize a non-finite value");
    // Continued-fraction convergents h/k.
    Integer h_prev = 1, h = static_cast<long>(std::floor(x));
    Integer k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
        double inv = 1.0 / frac;
        long a = static_cast<long>(std::floor(inv));
        frac = inv - static_cast<double>(a);
        Integer h_next = a * h + h_prev;
        Integer k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h; h = h_next;
        k_prev = k; k = k_next;
    }
    return make_rational(h, k);
}

} // namespace ctorus
