#include "ctorus/number_field.hpp"

#include "ctorus/error.hpp"
#include "ctorus/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace ctorus {

// ---------------------------------------------------------------------------
// Polynomials

int RationalPolynomial::degree() const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
        if (coeffs[static_cast<std::size_t>(k)] != 0) return k;
    return -1;
}

Rational RationalPolynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Interval RationalPolynomial::operator()(const Interval& x) const {
    Interval acc = Interval::point(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = mul_exact(acc, x);
        acc.lo += *it;
        acc.hi += *it;
    }
    return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
    RationalPolynomial d;
    for (std::size_t k = 1; k < coeffs.size(); ++k) d.coeffs.push_back(coeffs[k] * static_cast<long>(k));
    return d;
}

namespace {

RationalPolynomial remainder(RationalPolynomial a, const RationalPolynomial& b) {
    const int db = b.degree();
    const Rational lead = b.coeffs[static_cast<std::size_t>(db)];
    for (int da = a.degree(); da >= db; da = a.degree()) {
        const Rational f = a.coeffs[static_cast<std::size_t>(da)] / lead;
        for (int k = 0; k <= db; ++k)
            a.coeffs[static_cast<std::size_t>(da - db + k)] -= f * b.coeffs[static_cast<std::size_t>(k)];
        a.coeffs[static_cast<std::size_t>(da)] = 0;
    }
    return a;
}

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

int sign_variations(const std::vector<RationalPolynomial>& chain, const Rational& x) {
    int variations = 0, last = 0;
    for (const auto& p : chain) {
        const int s = sign_of(p(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

} // namespace

int count_real_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
    std::vector<RationalPolynomial> chain{p, p.derivative()};
    while (chain.back().degree() > 0) {
        RationalPolynomial r = remainder(chain[chain.size() - 2], chain.back());
        for (auto& c : r.coeffs) c = -c;
        if (r.degree() < 0) break;
        chain.push_back(std::move(r));
    }
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

// ---------------------------------------------------------------------------
// Generator specs

GeneratorSpec GeneratorSpec::imaginary_unit() {
    return {"i", {{Rational(1), Rational(0), Rational(1)}},
            {Interval::point(0), {Rational(1, 2), Rational(3, 2)}}, ConjKind::ImaginaryNegation};
}

GeneratorSpec GeneratorSpec::square_root(const std::string& name, const Integer& n) {
    const Integer a = abs(n);
    if (n == 0 || is_perfect_square(a)) fail(ErrorKind::InvalidField, "square root of a square is not a generator");
    Integer s;
    mpz_sqrt(s.get_mpz_t(), a.get_mpz_t());
    GeneratorSpec g;
    g.name = name;
    g.min_poly.coeffs = {Rational(-n), Rational(0), Rational(1)};
    const Interval axis{Rational(s), Rational(s + 1)};
    if (n > 0) {
        g.root_box = {axis, Interval::point(0)};
        g.conj = ConjKind::Real;
    } else {
        g.root_box = {Interval::point(0), axis};
        g.conj = ConjKind::ImaginaryNegation;
    }
    return g;
}

GeneratorSpec GeneratorSpec::real_root(const std::string& name, unsigned k, const Integer& n) {
    if (k < 2 || (k % 2 == 0 && n <= 0)) fail(ErrorKind::InvalidField, "no real root of the requested kind");
    Integer r;
    const Integer a = abs(n);
    mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
    GeneratorSpec g;
    g.name = name;
    g.min_poly.coeffs.assign(k + 1, Rational(0));
    g.min_poly.coeffs[0] = Rational(-n);
    g.min_poly.coeffs[k] = 1;
    Interval axis = n > 0 ? Interval{Rational(r), Rational(r + 1)} : Interval{Rational(-r - 1), Rational(-r)};
    g.root_box = {axis, Interval::point(0)};
    g.conj = ConjKind::Real;
    return g;
}

// ---------------------------------------------------------------------------
// NumberField

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool same_generator(const GeneratorSpec& a, const GeneratorSpec& b) {
    return a.name == b.name && a.conj == b.conj && a.min_poly.coeffs == b.min_poly.coeffs;
}

} // namespace

FieldPtr NumberField::create(std::vector<GeneratorSpec> generators, bool independence_declared) {
    auto has_i = std::find_if(generators.begin(), generators.end(), [](const auto& g) { return g.name == "i"; });
    if (has_i == generators.end()) generators.insert(generators.begin(), GeneratorSpec::imaginary_unit());
    return FieldPtr(new NumberField(std::move(generators), independence_declared));
}

NumberField::NumberField(std::vector<GeneratorSpec> generators, bool independence_declared)
    : generators_(std::move(generators)), independence_declared_(independence_declared) {
    for (std::size_t g = 0; g < generators_.size(); ++g) {
        const auto& spec = generators_[g];
        if (!valid_identifier(spec.name)) fail(ErrorKind::InvalidField, "bad generator name '" + spec.name + "'");
        for (std::size_t h = 0; h < g; ++h)
            if (generators_[h].name == spec.name) fail(ErrorKind::InvalidField, "duplicate generator " + spec.name);
        const int deg = spec.min_poly.degree();
        if (deg < 2) fail(ErrorKind::InvalidField, spec.name + ": minimal polynomial must have degree >= 2");
        if (static_cast<int>(spec.min_poly.coeffs.size()) != deg + 1 ||
            spec.min_poly.coeffs[static_cast<std::size_t>(deg)] != 1)
            fail(ErrorKind::InvalidField, spec.name + ": minimal polynomial is not monic");

        RationalPolynomial axis;
        Interval iso;
        if (spec.conj == ConjKind::Real) {
            if (spec.root_box.im.lo != 0 || spec.root_box.im.hi != 0)
                fail(ErrorKind::InvalidField, spec.name + ": real generator needs a root box on the real axis");
            axis = spec.min_poly;
            iso = spec.root_box.re;
        } else {
            if (spec.root_box.re.lo != 0 || spec.root_box.re.hi != 0)
                fail(ErrorKind::InvalidField, spec.name + ": imaginary generator needs a root box on the imaginary axis");
            axis.coeffs.assign(spec.min_poly.coeffs.size(), Rational(0));
            for (std::size_t k = 0; k < spec.min_poly.coeffs.size(); ++k) {
                if (k % 2 == 1 && spec.min_poly.coeffs[k] != 0)
                    fail(ErrorKind::InvalidField, spec.name + ": imaginary-negation needs an even minimal polynomial");
                // p(i y) = sum c_2k (-1)^k y^2k
                axis.coeffs[k] = (k % 4 == 2) ? Rational(-spec.min_poly.coeffs[k]) : spec.min_poly.coeffs[k];
            }
            iso = spec.root_box.im;
        }
        if (iso.lo > iso.hi) fail(ErrorKind::InvalidField, spec.name + ": empty root box");
        if (axis(iso.lo) == 0 || axis(iso.hi) == 0)
            fail(ErrorKind::InvalidField, spec.name + ": rational root on the root box boundary");
        if (count_real_roots(axis, iso.lo, iso.hi) != 1)
            fail(ErrorKind::InvalidField, spec.name + ": root box does not isolate exactly one root");
        if (spec.name == "i" && (spec.conj != ConjKind::ImaginaryNegation ||
                                 spec.min_poly.coeffs != GeneratorSpec::imaginary_unit().min_poly.coeffs || iso.lo < 0))
            fail(ErrorKind::InvalidField, "generator i must be the root +i of x^2+1");
        axis_polys_.push_back(std::move(axis));
        isolating_.push_back(iso);
        degrees_.push_back(deg);
    }

    std::size_t n = 1;
    for (int d : degrees_) {
        strides_.push_back(n);
        n *= static_cast<std::size_t>(d);
    }
    exponents_.resize(n);
    conj_signs_.resize(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::vector<int> e(degrees_.size());
        int sign = 1;
        for (std::size_t g = 0; g < degrees_.size(); ++g) {
            e[g] = static_cast<int>((idx / strides_[g]) % static_cast<std::size_t>(degrees_[g]));
            if (generators_[g].conj == ConjKind::ImaginaryNegation && e[g] % 2 == 1) sign = -sign;
        }
        exponents_[idx] = std::move(e);
        conj_signs_[idx] = sign;
    }

    for (std::size_t g = 0; g < degrees_.size(); ++g) {
        const auto deg = static_cast<std::size_t>(degrees_[g]);
        const auto& f = generators_[g].min_poly.coeffs;
        std::vector<std::vector<Rational>> powers;
        std::vector<Rational> cur(deg, Rational(0));
        cur[0] = 1;
        for (std::size_t k = 0; k + 1 < 2 * deg; ++k) {
            powers.push_back(cur);
            // multiply by the generator and reduce by the monic minimal polynomial
            const Rational top = cur[deg - 1];
            for (std::size_t t = deg - 1; t > 0; --t) cur[t] = cur[t - 1] - top * f[t];
            cur[0] = -top * f[0];
        }
        reduction_.push_back(std::move(powers));
    }
}

std::optional<std::size_t> NumberField::generator_index(const std::string& name) const {
    for (std::size_t g = 0; g < generators_.size(); ++g)
        if (generators_[g].name == name) return g;
    return std::nullopt;
}

std::string NumberField::monomial_name(std::size_t monomial) const {
    std::string out;
    const auto& e = exponents_[monomial];
    for (std::size_t g = 0; g < e.size(); ++g) {
        if (e[g] == 0) continue;
        if (!out.empty()) out += "*";
        out += generators_[g].name;
        if (e[g] > 1) out += "^" + std::to_string(e[g]);
    }
    return out.empty() ? "1" : out;
}

bool NumberField::same_as(const NumberField& other) const {
    if (this == &other) return true;
    return generators_.size() == other.generators_.size() && embeds_in(other);
}

bool NumberField::embeds_in(const NumberField& larger) const {
    if (generators_.size() > larger.generators_.size()) return false;
    for (std::size_t g = 0; g < generators_.size(); ++g)
        if (!same_generator(generators_[g], larger.generators_[g])) return false;
    return true;
}

FieldPtr NumberField::extended(const GeneratorSpec& extra) const {
    auto gens = generators_;
    gens.push_back(extra);
    return create(std::move(gens), independence_declared_);
}

std::vector<Rational> NumberField::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    const std::size_t n = dimension(), ngen = degrees_.size();
    std::vector<Rational> out(n, Rational(0));
    std::vector<std::size_t> nz_b;
    for (std::size_t j = 0; j < n; ++j)
        if (b[j] != 0) nz_b.push_back(j);
    std::vector<int> e(ngen);
    // Depth-first expansion of the reduced tensor product of generator powers.
    auto expand = [&](auto&& self, std::size_t g, std::size_t index, const Rational& c) -> void {
        if (g == ngen) {
            out[index] += c;
            return;
        }
        const auto& red = reduction_[g][static_cast<std::size_t>(e[g])];
        for (std::size_t t = 0; t < red.size(); ++t) {
            if (red[t] == 0) continue;
            if (red[t] == 1)
                self(self, g + 1, index + t * strides_[g], c);
            else
                self(self, g + 1, index + t * strides_[g], Rational(c * red[t]));
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j : nz_b) {
            for (std::size_t g = 0; g < ngen; ++g) e[g] = exponents_[i][g] + exponents_[j][g];
            expand(expand, 0, 0, Rational(a[i] * b[j]));
        }
    }
    return out;
}

Interval NumberField::refine_generator(std::size_t g, unsigned long bits) const {
    const auto& p = axis_polys_[g];
    const auto dp = p.derivative();
    Interval x = isolating_[g];
    const Rational target = Rational(1) / Rational(Integer(1) << static_cast<mp_bitcnt_t>(bits));
    const int lo_sign = sign_of(p(x.lo));
    const unsigned long cap = 10 * bits + 200;
    for (unsigned long iter = 0; x.width() > target; ++iter) {
        if (iter > cap) fail(ErrorKind::PrecisionExhausted, "root refinement stalled for " + generators_[g].name);
        const Rational before = x.width();
        const Rational m = x.midpoint();
        const Rational fm = p(m);
        if (fm == 0) return Interval::point(m);
        const Interval slope = dp(x);
        if (!slope.contains_zero()) {
            // Interval Newton: root lies in m - f(m)/f'(X).
            Interval step = div_exact(Interval::point(fm), slope);
            Interval newton = outward({m - step.hi, m - step.lo}, bits + 8);
            x.lo = std::max(x.lo, newton.lo);
            x.hi = std::min(x.hi, newton.hi);
            if (x.lo > x.hi) fail(ErrorKind::PrecisionExhausted, "root box of " + generators_[g].name + " lost its root");
        }
        if (x.width() * 2 > before) {
            const Rational mid = round_down(x.midpoint(), bits + 8);
            if (mid <= x.lo || mid >= x.hi) continue;
            const Rational fmid = p(mid);
            if (fmid == 0) return Interval::point(mid);
            if (sign_of(fmid) == lo_sign)
                x.lo = mid;
            else
                x.hi = mid;
        }
    }
    return x;
}

const std::vector<ComplexBox>& NumberField::monomial_boxes(unsigned long work_bits) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = box_cache_.find(work_bits);
    if (it != box_cache_.end()) return it->second;

    const unsigned long inner = work_bits + 8;
    std::vector<std::vector<ComplexBox>> powers(generators_.size());
    for (std::size_t g = 0; g < generators_.size(); ++g) {
        const Interval axis = refine_generator(g, inner);
        const ComplexBox gen = generators_[g].conj == ConjKind::Real ? ComplexBox{axis, Interval::point(0)}
                                                                     : ComplexBox{Interval::point(0), axis};
        powers[g].push_back(ComplexBox::point(1));
        for (int k = 1; k < degrees_[g]; ++k) powers[g].push_back(mul(powers[g].back(), gen, inner));
    }
    std::vector<ComplexBox> boxes;
    boxes.reserve(dimension());
    for (const auto& e : exponents_) {
        ComplexBox b = ComplexBox::point(1);
        for (std::size_t g = 0; g < e.size(); ++g)
            if (e[g] > 0) b = mul(b, powers[g][static_cast<std::size_t>(e[g])], inner);
        boxes.push_back(std::move(b));
    }
    return box_cache_.emplace(work_bits, std::move(boxes)).first->second;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) fail(ErrorKind::InvalidField, "element without a field");
    if (coeffs_.size() != field_->dimension()) fail(ErrorKind::DimensionMismatch, "coefficient vector size");
}

FieldElement FieldElement::zero(const FieldPtr& field) {
    return FieldElement(field, std::vector<Rational>(field->dimension(), Rational(0)));
}

FieldElement FieldElement::one(const FieldPtr& field) { return from_rational(field, 1); }

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rational& q) {
    auto z = zero(field);
    z.coeffs_[0] = q;
    return z;
}

FieldElement FieldElement::generator(const FieldPtr& field, const std::string& name) {
    auto g = field->generator_index(name);
    if (!g) fail(ErrorKind::ValidationError, "unknown generator '" + name + "'");
    std::size_t stride = 1;
    for (std::size_t h = 0; h < *g; ++h) stride *= static_cast<std::size_t>(field->generators()[h].min_poly.degree());
    return monomial(field, stride);
}

FieldElement FieldElement::monomial(const FieldPtr& field, std::size_t index, const Rational& coeff) {
    auto z = zero(field);
    z.coeffs_.at(index) = coeff;
    return z;
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& q) { return q == 0; });
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) fail(ErrorKind::NotRational, "element " + to_string(*this) + " is not rational");
    return coeffs_[0];
}

FieldElement FieldElement::lifted_to(const FieldPtr& larger) const {
    if (field_.get() == larger.get()) return *this;
    if (!field_->embeds_in(*larger)) fail(ErrorKind::DimensionMismatch, "field does not embed in the target");
    auto out = zero(larger);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        const auto& e = field_->exponents(k);
        std::size_t index = 0, stride = 1;
        for (std::size_t g = 0; g < larger->generators().size(); ++g) {
            if (g < e.size()) index += static_cast<std::size_t>(e[g]) * stride;
            stride *= static_cast<std::size_t>(larger->generators()[g].min_poly.degree());
        }
        out.coeffs_[index] = coeffs_[k];
    }
    return out;
}

void FieldElement::check_same_field(const FieldElement& b) const {
    if (field_.get() != b.field_.get() && !field_->same_as(*b.field_))
        fail(ErrorKind::DimensionMismatch, "elements belong to different fields");
}

namespace {

// Brings both operands into a common field when one field is a prefix extension of the other.
void unify(FieldElement& a, FieldElement& b) {
    if (a.field().get() == b.field().get()) return;
    if (a.field()->same_as(*b.field())) return;
    if (a.field()->embeds_in(*b.field()))
        a = a.lifted_to(b.field());
    else if (b.field()->embeds_in(*a.field()))
        b = b.lifted_to(a.field());
    else
        fail(ErrorKind::DimensionMismatch, "elements belong to unrelated fields");
}

} // namespace

FieldElement& FieldElement::operator+=(const FieldElement& b) {
    FieldElement rhs = b;
    unify(*this, rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& b) {
    FieldElement rhs = b;
    unify(*this, rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& b) {
    FieldElement rhs = b;
    unify(*this, rhs);
    coeffs_ = field_->multiply(coeffs_, rhs.coeffs_);
    return *this;
}

FieldElement& FieldElement::operator*=(const Rational& q) {
    for (auto& c : coeffs_) c *= q;
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& b) {
    FieldElement rhs = b;
    unify(*this, rhs);
    if (rhs.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero field element");
    if (rhs.is_rational()) {
        const Rational inv = 1 / rhs.coeffs_[0];
        return *this *= inv;
    }
    // Solve rhs * x = *this over the monomial basis.
    const std::size_t n = field_->dimension();
    RationalMatrix m(n, n, Rational(0));
    std::vector<Rational> unit(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        unit[j] = 1;
        const auto col = field_->multiply(rhs.coeffs_, unit);
        unit[j] = 0;
        for (std::size_t r = 0; r < n; ++r) m(r, j) = col[r];
    }
    auto x = solve(m, coeffs_);
    if (!x || rank_of(m) < n)
        fail(ErrorKind::NotInvertible, "multiplication by " + to_string(rhs) + " is singular; declared independence fails");
    coeffs_ = std::move(*x);
    return *this;
}

FieldElement FieldElement::operator-() const {
    FieldElement out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    FieldElement x = a, y = b;
    unify(x, y);
    return x.coeffs_ == y.coeffs_;
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
    switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
    }
    return a;
}

FieldElement conjugate(const FieldElement& a) {
    std::vector<Rational> c = a.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k)
        if (a.field()->conjugation_sign(k) < 0) c[k] = -c[k];
    return FieldElement(a.field(), std::move(c));
}

FieldElement real_part(const FieldElement& a) { return (a + conjugate(a)) * Rational(1, 2); }

FieldElement imaginary_part(const FieldElement& a) {
    const auto i = FieldElement::generator(a.field(), "i");
    return (a - conjugate(a)) * i * Rational(-1, 2);
}

bool is_real(const FieldElement& a) { return conjugate(a) == a; }

ComplexBox enclose(const FieldElement& a, unsigned long work_bits) {
    const auto& boxes = a.field()->monomial_boxes(work_bits);
    ComplexBox acc = ComplexBox::point(0);
    const auto& c = a.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        acc = add(acc, scale(boxes[k], c[k], work_bits), work_bits);
    }
    return acc;
}

ComplexBox embed(const FieldElement& a, unsigned long precision_bits) {
    if (precision_bits < 8) fail(ErrorKind::ValidationError, "precision must be at least 8 bits");
    const Rational target = Rational(1) / Rational(Integer(1) << static_cast<mp_bitcnt_t>(precision_bits));
    unsigned long work = precision_bits + 32;
    for (int attempt = 0; attempt < 8; ++attempt, work *= 2) {
        ComplexBox box = enclose(a, work);
        if (box.width() <= target) return box;
    }
    fail(ErrorKind::PrecisionExhausted, "embedding did not reach the requested width");
}

std::complex<double> approximate(const FieldElement& a) {
    const ComplexBox b = enclose(a, 64);
    return {b.re.midpoint().get_d(), b.im.midpoint().get_d()};
}

int exact_sign(const FieldElement& a, int max_doublings) {
    if (!is_real(a)) fail(ErrorKind::NotReal, "sign of a non-real element " + to_string(a));
    if (a.is_zero()) return 0;
    if (a.is_rational()) return sign_of(a.coeffs()[0]);
    unsigned long work = 64;
    for (int k = 0; k <= max_doublings; ++k, work *= 2) {
        const ComplexBox b = enclose(a, work);
        if (b.re.lo > 0) return 1;
        if (b.re.hi < 0) return -1;
    }
    fail(ErrorKind::PrecisionExhausted, "could not separate " + to_string(a) + " from zero");
}

std::optional<std::vector<long>> find_small_relation(const std::vector<FieldElement>& values, long height,
                                                     unsigned long bits) {
    const std::size_t n = values.size();
    if (n == 0) return std::nullopt;
    const std::size_t n1 = n / 2, n2 = n - n1;
    const long base = 2 * height + 1;
    auto count = [&](std::size_t k) {
        double c = 1;
        for (std::size_t t = 0; t < k; ++t) c *= static_cast<double>(base);
        return c;
    };
    if (count(n2) > 5e6) fail(ErrorKind::ValidationError, "relation search space too large");

    std::vector<std::complex<double>> x;
    double scale_sum = 0;
    for (const auto& v : values) {
        x.push_back(approximate(v));
        scale_sum += std::abs(x.back());
    }
    const double tol = 1e-9 * (1.0 + static_cast<double>(height) * scale_sum);

    auto decode = [&](long index, std::size_t len, std::vector<long>& out) {
        out.assign(len, 0);
        for (std::size_t t = 0; t < len; ++t) {
            out[t] = index % base - height;
            index /= base;
        }
    };
    auto sums = [&](std::size_t offset, std::size_t len) {
        std::vector<std::pair<std::complex<double>, long>> out;
        const long total = static_cast<long>(count(len));
        out.reserve(static_cast<std::size_t>(total));
        std::vector<long> c;
        for (long idx = 0; idx < total; ++idx) {
            decode(idx, len, c);
            std::complex<double> s = 0;
            for (std::size_t t = 0; t < len; ++t) s += static_cast<double>(c[t]) * x[offset + t];
            out.emplace_back(s, idx);
        }
        return out;
    };
    const auto left = sums(0, n1);
    auto right = sums(n1, n2);
    std::sort(right.begin(), right.end(), [](const auto& a, const auto& b) {
        return a.first.real() < b.first.real() || (a.first.real() == b.first.real() && a.second < b.second);
    });
    const long zero_left = static_cast<long>((count(n1) - 1) / 2);
    const long zero_right = static_cast<long>((count(n2) - 1) / 2);

    std::vector<long> cl, cr;
    for (const auto& [sl, il] : left) {
        const double want = -sl.real();
        auto it = std::lower_bound(right.begin(), right.end(), want - tol,
                                   [](const auto& e, double v) { return e.first.real() < v; });
        for (; it != right.end() && it->first.real() <= want + tol; ++it) {
            if (std::abs(sl.imag() + it->first.imag()) > tol) continue;
            if (il == zero_left && it->second == zero_right) continue;
            decode(il, n1, cl);
            decode(it->second, n2, cr);
            std::vector<long> c = cl;
            c.insert(c.end(), cr.begin(), cr.end());
            FieldElement combo = FieldElement::zero(values[0].field());
            for (std::size_t t = 0; t < n; ++t)
                if (c[t] != 0) combo += values[t] * Rational(c[t]);
            if (combo.is_zero() || enclose(combo, bits).contains_zero()) return c;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<long>> screen_independence(const FieldPtr& field, long height, unsigned long bits) {
    std::vector<FieldElement> basis;
    for (std::size_t k = 0; k < field->dimension(); ++k) basis.push_back(FieldElement::monomial(field, k));
    return find_small_relation(basis, height, bits);
}

std::optional<FieldElement> find_square_root(const FieldPtr& field, const Integer& d) {
    if (d == 0) return FieldElement::zero(field);
    for (std::size_t k = 0; k < field->dimension(); ++k) {
        const auto m = FieldElement::monomial(field, k);
        const auto sq = m * m;
        if (!sq.is_rational() || sq.is_zero()) continue;
        const Rational ratio = Rational(d) / sq.coeffs()[0];
        if (ratio <= 0 || !is_perfect_square(ratio.get_num()) || !is_perfect_square(ratio.get_den())) continue;
        Integer rn, rd;
        mpz_sqrt(rn.get_mpz_t(), ratio.get_num_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), ratio.get_den_mpz_t());
        FieldElement root = m * make_rational(rn, rd);
        const ComplexBox b = enclose(root, 64);
        const bool flip = d > 0 ? b.re.hi < 0 : b.im.hi < 0;
        return flip ? -root : root;
    }
    return std::nullopt;
}

std::string to_string(const FieldElement& a) {
    std::ostringstream out;
    bool first = true;
    const auto& c = a.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        const bool negative = c[k] < 0;
        const Rational mag = abs(c[k]);
        if (first)
            out << (negative ? "-" : "");
        else
            out << (negative ? " - " : " + ");
        const std::string mono = a.field()->monomial_name(k);
        if (k == 0)
            out << to_string(mag);
        else if (mag == 1)
            out << mono;
        else
            out << to_string(mag) << "*" << mono;
        first = false;
    }
    return first ? "0" : out.str();
}

} // namespace ctorus
