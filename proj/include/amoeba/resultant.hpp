#pragma once

// Sylvester resultants of integer polynomials, computed by evaluation at integer grids,
// Bareiss determinants and tensor-product interpolation.

#include "amoeba/laurent.hpp"
#include "amoeba/linalg.hpp"

#include <vector>

namespace amoeba {

/// Sylvester matrix of p and q given lowest-first with formal degrees size()-1.
inline IntMatrix sylvester_matrix(const std::vector<BigInt>& p, const std::vector<BigInt>& q) {
    const std::size_t dp = p.size() - 1, dq = q.size() - 1, n = dp + dq;
    IntMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t r = 0; r < dq; ++r)
        for (std::size_t k = 0; k <= dp; ++k) m[r][r + k] = p[dp - k];
    for (std::size_t r = 0; r < dp; ++r)
        for (std::size_t k = 0; k <= dq; ++k) m[dq + r][r + k] = q[dq - k];
    return m;
}

inline BigInt sylvester_resultant(const std::vector<BigInt>& p, const std::vector<BigInt>& q) {
    if (p.empty() || q.empty()) throw AmoebaError("sylvester_resultant: empty coefficient list");
    if (p.size() == 1 && q.size() == 1) return 1;
    return bareiss_determinant(sylvester_matrix(p, q));
}

namespace detail {

/// Monomial coefficients of the polynomial of degree <= n through (k, y_k), k = 0..n.
inline std::vector<Rational> interpolate_at_naturals(std::vector<Rational> y) {
    const std::size_t n = y.size();
    // Newton divided differences on nodes 0..n-1.
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            y[i] = (y[i] - y[i - 1]) / Rational(static_cast<long>(j));
            if (i == j) break;
        }
    std::vector<Rational> c(n, Rational(0));
    // Horner expansion of the Newton form.
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = n - 1; k > 0; --k) c[k] = c[k - 1] - Rational(static_cast<long>(i)) * c[k];
        c[0] = -Rational(static_cast<long>(i)) * c[0];
        c[0] += y[i];
    }
    return c;
}

}  // namespace detail

/// Coefficients of f in `var` (lowest first); each is f's coefficient polynomial with that
/// variable's exponent set to zero. Requires nonnegative exponents in `var`.
inline std::vector<LaurentPoly> coefficients_in(const LaurentPoly& f, std::size_t var) {
    if (var >= f.nvars()) throw ArityError("coefficients_in: variable out of range");
    if (f.is_zero()) return {};
    if (f.min_exponent(var) < 0) throw AmoebaError("coefficients_in: negative exponent in the main variable");
    std::vector<LaurentPoly> out(static_cast<std::size_t>(f.max_exponent(var) + 1), LaurentPoly(f.nvars()));
    for (const auto& [e, c] : f.terms()) {
        Exponent r = e;
        r[var] = 0;
        out[static_cast<std::size_t>(e[var])].add_term(std::move(r), c);
    }
    return out;
}

/// Res_var(f, g) as a polynomial in the remaining variables (order preserved). Both inputs must
/// be polynomials in all variables; formal degrees in `var` are the actual degrees.
inline LaurentPoly resultant(const LaurentPoly& f, const LaurentPoly& g, std::size_t var) {
    if (f.nvars() != g.nvars()) throw ArityError("resultant: arity mismatch");
    const std::size_t n = f.nvars();
    if (n < 2) throw ArityError("resultant: need at least two variables");
    if (f.is_zero() || g.is_zero()) return LaurentPoly(n - 1);
    if (!f.is_polynomial() || !g.is_polynomial()) throw AmoebaError("resultant: inputs must be polynomials");
    const auto fc = coefficients_in(f, var), gc = coefficients_in(g, var);
    const std::size_t p = fc.size() - 1, q = gc.size() - 1;

    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < n; ++j)
        if (j != var) others.push_back(j);
    std::vector<std::size_t> deg(others.size());
    for (std::size_t a = 0; a < others.size(); ++a) {
        const std::size_t j = others[a];
        deg[a] = static_cast<std::size_t>(q * static_cast<std::size_t>(f.max_exponent(j)) +
                                          p * static_cast<std::size_t>(g.max_exponent(j)));
    }
    std::size_t cells = 1;
    for (auto d : deg) cells *= d + 1;

    // Values on the grid {0..deg_a}, last axis fastest.
    std::vector<Rational> values(cells);
    std::vector<std::size_t> idx(others.size(), 0);
    std::vector<BigInt> point(n, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        for (std::size_t a = 0; a < others.size(); ++a) point[others[a]] = static_cast<long>(idx[a]);
        std::vector<BigInt> pv, qv;
        for (const auto& c : fc) pv.push_back(c.is_zero() ? BigInt(0) : c.evaluate_integer(point));
        for (const auto& c : gc) qv.push_back(c.is_zero() ? BigInt(0) : c.evaluate_integer(point));
        values[cell] = Rational(sylvester_resultant(pv, qv));
        for (std::size_t a = others.size(); a-- > 0;) {
            if (++idx[a] <= deg[a]) break;
            idx[a] = 0;
        }
    }

    // Separable interpolation: along each axis replace values by monomial coefficients.
    std::size_t stride = 1;
    for (std::size_t a = others.size(); a-- > 0;) {
        const std::size_t len = deg[a] + 1;
        const std::size_t block = stride * len;
        for (std::size_t base = 0; base < cells; base += block)
            for (std::size_t off = 0; off < stride; ++off) {
                std::vector<Rational> y(len);
                for (std::size_t k = 0; k < len; ++k) y[k] = values[base + off + k * stride];
                const auto c = detail::interpolate_at_naturals(std::move(y));
                for (std::size_t k = 0; k < len; ++k) values[base + off + k * stride] = c[k];
            }
        stride = block;
    }

    LaurentPoly out(n - 1);
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const Rational& v = values[cell];
        if (sgn(v) != 0) {
            if (v.get_den() != 1) throw AmoebaError("resultant: non-integral interpolation (internal error)");
            Exponent e(others.size());
            for (std::size_t a = 0; a < others.size(); ++a) e[a] = static_cast<std::int64_t>(idx[a]);
            out.add_term(std::move(e), v.get_num());
        }
        for (std::size_t a = others.size(); a-- > 0;) {
            if (++idx[a] <= deg[a]) break;
            idx[a] = 0;
        }
    }
    return out;
}

/// Places the variables of f at the given positions of an nvars-variable ring.
inline LaurentPoly embed(const LaurentPoly& f, const std::vector<std::size_t>& positions, std::size_t nvars) {
    if (positions.size() != f.nvars()) throw ArityError("embed: position list length mismatch");
    LaurentPoly out(nvars);
    for (const auto& [e, c] : f.terms()) {
        Exponent r(nvars, 0);
        for (std::size_t j = 0; j < e.size(); ++j) r[positions[j]] = e[j];
        out.add_term(std::move(r), c);
    }
    return out;
}

}  // namespace amoeba
