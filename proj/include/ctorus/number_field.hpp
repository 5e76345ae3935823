#pragma once

#include "ctorus/error.hpp"
#include "ctorus/interval.hpp"
#include "ctorus/rational.hpp"

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ctorus {

/// Univariate polynomial over Q, coefficients from the constant term upwards.
struct RationalPolynomial {
    std::vector<Rational> coeffs;

    int degree() const;
    Rational operator()(const Rational& x) const;
    Interval operator()(const Interval& x) const;
    RationalPolynomial derivative() const;
};

/// Number of distinct real roots in the half-open interval (lo, hi], by Sturm sequence.
int count_real_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi);

/// Complex conjugation acts on a generator either trivially or by negation.
enum class ConjKind { Real, ImaginaryNegation };

struct GeneratorSpec {
    std::string name;
    RationalPolynomial min_poly; // monic, degree >= 2, trusted irreducible
    ComplexBox root_box;         // a segment on the real axis (Real) or the imaginary axis (ImaginaryNegation)
    ConjKind conj = ConjKind::Real;

    static GeneratorSpec imaginary_unit();
    /// sqrt(n) for n > 0 (positive real root) or n < 0 (root with positive imaginary part).
    static GeneratorSpec square_root(const std::string& name, const Integer& n);
    /// The real root of x^k - n, k odd or n > 0.
    static GeneratorSpec real_root(const std::string& name, unsigned k, const Integer& n);
};

class FieldElement;
class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Tensor product of simple extensions Q[g_1]/(f_1) (x) ... (x) Q[g_k]/(f_k), viewed as a
/// number field through the declared root of each f_j. Linear independence of the monomial
/// basis over Q is declared by the caller, not proven.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    /// Validates every generator and adjoins `i` in front if it is absent.
    static FieldPtr create(std::vector<GeneratorSpec> generators, bool independence_declared = true);

    const std::vector<GeneratorSpec>& generators() const noexcept { return generators_; }
    bool independence_declared() const noexcept { return independence_declared_; }
    std::size_t dimension() const noexcept { return exponents_.size(); }
    const std::vector<int>& exponents(std::size_t monomial) const { return exponents_[monomial]; }
    std::optional<std::size_t> generator_index(const std::string& name) const;
    std::string monomial_name(std::size_t monomial) const;
    int conjugation_sign(std::size_t monomial) const { return conj_signs_[monomial]; }

    bool same_as(const NumberField& other) const;
    /// True when this field's generators are a prefix of `larger`'s.
    bool embeds_in(const NumberField& larger) const;

    FieldPtr extended(const GeneratorSpec& extra) const;

    /// Coefficient vector of the product of two monomial-basis vectors.
    std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;

    /// Enclosure of each monomial's complex value at a working precision; cached.
    const std::vector<ComplexBox>& monomial_boxes(unsigned long work_bits) const;

    /// Isolating interval of generator `g` (real part for Real, imaginary part for
    /// ImaginaryNegation) refined to width <= 2^-bits.
    Interval refine_generator(std::size_t g, unsigned long bits) const;

private:
    NumberField(std::vector<GeneratorSpec> generators, bool independence_declared);

    std::vector<GeneratorSpec> generators_;
    bool independence_declared_;
    std::vector<int> degrees_;
    std::vector<std::size_t> strides_;
    std::vector<std::vector<int>> exponents_;
    std::vector<int> conj_signs_;
    // reduction_[g][k] = g^k written in the basis 1, g, ..., g^(deg-1), for k <= 2 deg - 2.
    std::vector<std::vector<std::vector<Rational>>> reduction_;
    std::vector<RationalPolynomial> axis_polys_;
    std::vector<Interval> isolating_;

    mutable std::mutex cache_mutex_;
    mutable std::map<unsigned long, std::vector<ComplexBox>> box_cache_;
};

class FieldElement {
public:
    FieldElement(FieldPtr field, std::vector<Rational> coeffs);

    static FieldElement zero(const FieldPtr& field);
    static FieldElement one(const FieldPtr& field);
    static FieldElement from_rational(const FieldPtr& field, const Rational& q);
    static FieldElement generator(const FieldPtr& field, const std::string& name);
    static FieldElement monomial(const FieldPtr& field, std::size_t index, const Rational& coeff = 1);

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Throws NotRational unless is_rational().
    Rational rational_value() const;

    FieldElement lifted_to(const FieldPtr& larger) const;

    FieldElement& operator+=(const FieldElement& b);
    FieldElement& operator-=(const FieldElement& b);
    FieldElement& operator*=(const FieldElement& b);
    FieldElement& operator*=(const Rational& q);
    FieldElement& operator/=(const FieldElement& b);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator*(FieldElement a, const Rational& q) { return a *= q; }
    friend FieldElement operator*(const Rational& q, FieldElement a) { return a *= q; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    FieldElement operator-() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    void check_same_field(const FieldElement& b) const;

    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

enum class ArithOp { Add, Sub, Mul, Div };

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);
FieldElement conjugate(const FieldElement& a);
FieldElement real_part(const FieldElement& a);
FieldElement imaginary_part(const FieldElement& a);
bool is_real(const FieldElement& a);

/// Sound enclosure at a working precision, without a width guarantee.
ComplexBox enclose(const FieldElement& a, unsigned long work_bits);
/// Enclosure of width at most 2^-precision_bits.
ComplexBox embed(const FieldElement& a, unsigned long precision_bits);
std::complex<double> approximate(const FieldElement& a);

/// Exact sign of a real element: zero test on coefficients, otherwise interval refinement
/// starting at 64 bits and doubling at most `max_doublings` times.
int exact_sign(const FieldElement& a, int max_doublings = 20);

/// Searches for a nonzero integer vector c with |c_k| <= height whose combination sum c_k x_k
/// embeds into a box containing 0 at width < 2^-bits. Returns the first relation found.
std::optional<std::vector<long>> find_small_relation(const std::vector<FieldElement>& values, long height,
                                                     unsigned long bits = 160);

/// Runs find_small_relation on the monomial basis.
std::optional<std::vector<long>> screen_independence(const FieldPtr& field, long height = 10,
                                                     unsigned long bits = 160);

/// An element s with s^2 = d, chosen as the positive real root (d > 0) or the root with positive
/// imaginary part (d < 0), if one is a rational multiple of a monomial.
std::optional<FieldElement> find_square_root(const FieldPtr& field, const Integer& d);

std::string to_string(const FieldElement& a);
inline std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << to_string(a); }

} // namespace ctorus
