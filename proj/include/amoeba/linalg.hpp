#pragma once

// Small exact linear algebra over Z and Q.

#include "amoeba/numeric.hpp"

#include <utility>
#include <vector>

namespace amoeba {

using IntMatrix = std::vector<std::vector<BigInt>>;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline BigInt bareiss_determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m[k][k]) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m[p][k]) == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(t);
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : BigInt(-m[n - 1][n - 1]);
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        const Rational inv = Rational(1) / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return row_reduce(m).size(); }

/// Integer basis of the right null space of an integer matrix with `cols` columns.
inline std::vector<std::vector<BigInt>> integer_nullspace(const IntMatrix& a, std::size_t cols) {
    RatMatrix m;
    for (const auto& row : a) {
        std::vector<Rational> r;
        for (const auto& v : row) r.emplace_back(v);
        m.push_back(std::move(r));
    }
    const auto pivots = m.empty() ? std::vector<std::size_t>{} : row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<BigInt>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
        BigInt den = 1;
        for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
        std::vector<BigInt> iv;
        BigInt g = 0;
        for (const auto& q : v) {
            Rational s = q * Rational(den);
            s.canonicalize();
            iv.push_back(s.get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv.back().get_mpz_t());
        }
        if (g > 1)
            for (auto& x : iv) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        basis.push_back(std::move(iv));
    }
    return basis;
}

}  // namespace amoeba
