#include "ctorus/examples.hpp"

#include <random>

namespace ctorus {

namespace {

std::string imaginary_name(const Integer& m0) { return "sqrtm" + to_string(m0); }

TorusWithMultiplication example1_core(const Integer& m, const FieldElement& r) {
    if (m < 1) fail(ErrorKind::ValidationError, "m must be positive");
    if (!is_real(r)) fail(ErrorKind::NotReal, "r must be real");
    const FieldPtr& f = r.field();
    const FieldElement s = sqrt_negative(f, m);
    const FieldElement i = FieldElement::generator(f, "i");
    // r sqrt(m) = -i r sqrt(-m)
    const FieldElement r_sqrt_m = -(i * r * s);
    if (auto rel = find_small_relation({r * r, r_sqrt_m, FieldElement::one(f)}, 10))
        fail(ErrorKind::IndependenceSuspect, "r^2, r sqrt(m), 1 satisfy " + std::to_string((*rel)[0]) + ", " +
                                                 std::to_string((*rel)[1]) + ", " + std::to_string((*rel)[2]));
    const FieldElement one = FieldElement::one(f);
    const FieldElement ri = r * i;
    FieldMatrix period(2, 4, {one, one + ri, s, s * (one + ri),
                              one, ri, -s, -s * ri});
    Torus t = build_torus(period);
    MultiplicationDatum mult = attach_multiplication(t, diagonal({s, -s}), -m);
    return {std::move(t), std::move(mult)};
}

} // namespace

std::vector<GeneratorSpec> imaginary_square_root_generators(const std::vector<Integer>& ms) {
    std::vector<GeneratorSpec> out;
    std::vector<Integer> seen;
    for (const auto& m : ms) {
        const Integer m0 = squarefree_part(m).value;
        if (m0 == 1 || std::find(seen.begin(), seen.end(), m0) != seen.end()) continue;
        seen.push_back(m0);
        out.push_back(GeneratorSpec::square_root(imaginary_name(m0), -m0));
    }
    return out;
}

FieldElement sqrt_negative(const FieldPtr& field, const Integer& m) {
    const auto sf = squarefree_part(m);
    const FieldElement base = sf.value == 1 ? FieldElement::generator(field, "i")
                                            : FieldElement::generator(field, imaginary_name(sf.value));
    return base * Rational(sf.square_root);
}

TorusWithMultiplication example1(const Integer& m, const GeneratorSpec& r_spec) {
    auto gens = imaginary_square_root_generators({m});
    gens.push_back(r_spec);
    const FieldPtr f = NumberField::create(gens);
    return example1_core(m, FieldElement::generator(f, r_spec.name));
}

TorusWithMultiplication example1(const Integer& m, const Rational& r) {
    const FieldPtr f = NumberField::create(imaginary_square_root_generators({m}));
    return example1_core(m, FieldElement::from_rational(f, r));
}

TorusWithMultiplication example1(const Integer& m) { return example1(m, GeneratorSpec::real_root("r", 3, 2)); }

TorusWithMultiplication example2(const Integer& m, const Integer& n) {
    if (m < 1 || n < 1) fail(ErrorKind::ValidationError, "m and n must be positive");
    if (is_perfect_square(Integer(m * n))) fail(ErrorKind::SquareProduct, "mn = " + to_string(Integer(m * n)) + " is a square");
    const FieldPtr f = NumberField::create(imaginary_square_root_generators({m, n}));
    const FieldElement sm = sqrt_negative(f, m);
    const FieldElement sn = sqrt_negative(f, n);
    const FieldElement one = FieldElement::one(f);
    FieldMatrix period(2, 4, {one, one + sn, sm, sm * (one + sn),
                              one, sn, -sm, -sm * sn});
    Torus t = build_torus(period);
    MultiplicationDatum mult = attach_multiplication(t, diagonal({sm, -sm}), -m);
    return {std::move(t), std::move(mult)};
}

Torus scalar_cm_product(const Integer& m) {
    if (m < 1) fail(ErrorKind::ValidationError, "m must be positive");
    const FieldPtr f = NumberField::create(imaginary_square_root_generators({m}));
    const FieldElement s = sqrt_negative(f, m);
    const FieldElement one = FieldElement::one(f), zero = FieldElement::zero(f);
    return build_torus(FieldMatrix(2, 4, {one, s, zero, zero, zero, zero, one, s}));
}

TorusWithMultiplication random_torus_with_sqrt_d(const Integer& d, std::uint64_t seed) {
    if (d >= 0 && is_perfect_square(d)) fail(ErrorKind::PerfectSquare, to_string(d) + " is a perfect square");
    if (d == 0) fail(ErrorKind::PerfectSquare, "d = 0");
    const Integer a0 = squarefree_part(abs(d)).value;
    std::vector<GeneratorSpec> gens;
    if (a0 != 1) gens.push_back(GeneratorSpec::square_root("sqrt" + to_string(a0), a0));
    long extra = 3;
    for (long p : {3L, 5L, 7L})
        if (Integer(p) != a0) {
            extra = p;
            break;
        }
    gens.push_back(GeneratorSpec::square_root("sqrt" + std::to_string(extra), extra));
    const FieldPtr f = NumberField::create(gens);

    std::mt19937_64 rng(seed);
    auto draw = [&] {
        std::vector<Rational> c(f->dimension());
        for (auto& x : c) {
            x = make_rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 2) + 1);
        }
        return FieldElement(f, c);
    };
    for (int attempt = 0; attempt < 16; ++attempt) {
        FieldVector e1{draw(), draw()};
        FieldVector e2{draw(), draw()};
        try {
            auto built = sqrt_d_basis_lattice(d, e1, e2);
            return {std::move(built.torus), std::move(built.mult)};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateLattice) throw;
        }
    }
    fail(ErrorKind::GenerationFailed, "16 degenerate draws for d = " + to_string(d));
}

} // namespace ctorus
