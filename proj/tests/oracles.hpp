#pragma once

// Independent recomputations used to cross-check library results.

#include "ctorus/torus.hpp"

#include <algorithm>
#include <vector>

namespace ctorus::oracle {

// Rank of an integer matrix by fraction-free (Bareiss) elimination, pivoting on the last column first.
inline std::size_t bareiss_rank(std::vector<std::vector<Integer>> a) {
    if (a.empty()) return 0;
    const std::size_t cols = a[0].size();
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t step = 0; step < cols && rank < a.size(); ++step) {
        const std::size_t c = cols - 1 - step;
        std::size_t pivot = a.size();
        for (std::size_t r = rank; r < a.size(); ++r)
            if (a[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot == a.size()) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            for (std::size_t k = 0; k < cols; ++k)
                if (k != c) a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

// Rank of NS from the single condition that the (0,1) entry of P^-t E P^-1 vanishes.
inline std::size_t ns_rank(const Torus& t) {
    constexpr std::size_t pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    const FieldMatrix& q = t.big_period_inverse();
    std::vector<FieldElement> coeff;
    for (const auto& p : pairs) {
        const std::size_t k = p[0], l = p[1];
        coeff.push_back(q(k, 0) * q(l, 1) - q(l, 0) * q(k, 1));
    }
    const std::size_t n = t.field()->dimension();
    std::vector<std::vector<Integer>> rows;
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<Rational> row;
        for (const auto& c : coeff) row.push_back(c.lifted_to(t.field()).coeffs()[m]);
        Integer l = 1;
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> irow;
        for (const auto& x : row) irow.push_back(Rational(x * l).get_num());
        rows.push_back(irow);
    }
    return 6 - bareiss_rank(rows);
}

} // namespace ctorus::oracle
