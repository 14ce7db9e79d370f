#pragma once

// Lopsidedness of term-magnitude sets, the doubling-depth bound and winner classification.

#include "amoeba/interval.hpp"
#include "amoeba/laurent.hpp"
#include "amoeba/newton.hpp"

#include <map>
#include <optional>

namespace amoeba {

/// Raised when interval refinement reaches its precision cap without deciding a sign.
class UndeterminedError : public AmoebaError {
public:
    using AmoebaError::AmoebaError;
};

struct LopsidednessOutcome {
    bool lopsided = false;
    std::optional<Exponent> winner;
    /// Winner magnitude minus the sum of all other magnitudes, exact when evaluated at the origin.
    std::optional<BigInt> exact_margin;
    std::optional<Interval> margin;
    /// Precision that settled the decision (0 for the exact route).
    mpfr_prec_t precision_used = 0;
};

inline constexpr mpfr_prec_t kDefaultPrecisionCap = 4096;

/// Enclosures of |c_α| e^{<α,x>} for every term, in term order.
inline std::vector<std::pair<Exponent, Interval>> eval_term_magnitudes(const LaurentPoly& f, const RationalPoint& x,
                                                                       mpfr_prec_t precision_bits) {
    if (x.size() != f.nvars()) throw ArityError("eval_term_magnitudes: point dimension mismatch");
    if (precision_bits < 8) precision_bits = 8;
    // Work a little above the target so the final relative width meets it.
    const mpfr_prec_t prec = precision_bits + 32;
    std::map<Rational, Interval> exps;
    std::vector<std::pair<Exponent, Interval>> out;
    out.reserve(f.size());
    for (const auto& [e, c] : f.terms()) {
        Rational s = 0;
        for (std::size_t j = 0; j < e.size(); ++j) s += Rational(BigInt(static_cast<long>(e[j]))) * x[j];
        s.canonicalize();
        auto it = exps.find(s);
        if (it == exps.end()) it = exps.emplace(s, exp(Interval::from_rational(s, prec))).first;
        out.emplace_back(e, Interval::from_int(abs(c), prec) * it->second);
    }
    return out;
}

/// Exact test at x = 0: |c_β| > sum of the other |c_α| for the largest coefficient; ties are not lopsided.
inline LopsidednessOutcome is_lopsided_at_origin(const LaurentPoly& g) {
    LopsidednessOutcome out;
    if (g.is_zero()) return out;
    const Exponent* best = nullptr;
    BigInt best_abs = -1;
    BigInt total = 0;
    for (const auto& [e, c] : g.terms()) {
        const BigInt a = abs(c);
        total += a;
        if (a > best_abs) {
            best_abs = a;
            best = &e;
        }
    }
    const BigInt margin = 2 * best_abs - total;
    out.exact_margin = margin;
    if (sgn(margin) > 0) {
        out.lopsided = true;
        out.winner = *best;
    }
    return out;
}

namespace detail {

/// Sum over terms of b_s e^s with rational s and integer b_s; zero iff every b_s vanishes,
/// because exponentials of distinct algebraic numbers are linearly independent over the algebraic numbers.
using ExpSum = std::map<Rational, BigInt>;

inline bool exp_sum_is_zero(const ExpSum& d) {
    for (const auto& [s, b] : d)
        if (sgn(b) != 0) return false;
    return true;
}

inline Interval eval_exp_sum(const ExpSum& d, mpfr_prec_t prec) {
    Interval acc = Interval::from_int(0, prec);
    for (const auto& [s, b] : d)
        if (sgn(b) != 0) acc += Interval::from_int(b, prec) * exp(Interval::from_rational(s, prec));
    return acc;
}

}  // namespace detail

/// Certified lopsidedness of {|c_α| e^{<α,x>}} at a rational point.
/// Throws UndeterminedError when the precision cap is reached.
inline LopsidednessOutcome lopsided_membership(const LaurentPoly& g, const RationalPoint& x,
                                               mpfr_prec_t precision_bits = 128,
                                               mpfr_prec_t precision_cap = kDefaultPrecisionCap) {
    if (x.size() != g.nvars()) throw ArityError("lopsided_membership: point dimension mismatch");
    if (std::all_of(x.begin(), x.end(), [](const Rational& q) { return sgn(q) == 0; })) {
        auto out = is_lopsided_at_origin(g);
        if (out.exact_margin) out.margin = Interval::from_int(*out.exact_margin, std::max<mpfr_prec_t>(precision_bits, 64));
        return out;
    }
    LopsidednessOutcome out;
    if (g.is_zero()) return out;

    // Group the magnitudes by their exact exponent s = <α,x>.
    detail::ExpSum total;
    struct Term {
        const Exponent* e;
        BigInt a;
        Rational s;
    };
    std::vector<Term> terms;
    for (const auto& [e, c] : g.terms()) {
        Rational s = 0;
        for (std::size_t j = 0; j < e.size(); ++j) s += Rational(BigInt(static_cast<long>(e[j]))) * x[j];
        s.canonicalize();
        total[s] += abs(c);
        terms.push_back({&e, abs(c), s});
    }

    for (mpfr_prec_t prec = std::max<mpfr_prec_t>(precision_bits, 32);; prec *= 2) {
        if (prec > precision_cap) throw UndeterminedError("lopsidedness undecided at the precision cap");
        std::map<Rational, Interval> exps;
        for (const auto& [s, b] : total) exps.emplace(s, exp(Interval::from_rational(s, prec)));
        std::vector<Interval> mags;
        mags.reserve(terms.size());
        BigFloat best_lower(prec);
        mpfr_set_si(best_lower.get(), -1, MPFR_RNDD);
        for (const auto& t : terms) {
            mags.push_back(Interval::from_int(t.a, prec) * exps.at(t.s));
            if (cmp(mags.back().lower(), best_lower) > 0) best_lower = mags.back().lower();
        }
        // Only a term that could be the maximum can beat the sum of the others.
        bool unresolved = false;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (cmp(mags[i].upper(), best_lower) < 0) continue;
            detail::ExpSum d = total;
            for (auto& [s, b] : d) b = -b;
            d[terms[i].s] += 2 * terms[i].a;
            if (detail::exp_sum_is_zero(d)) continue;
            Interval margin = detail::eval_exp_sum(d, prec);
            if (margin.certainly_positive()) {
                out.lopsided = true;
                out.winner = *terms[i].e;
                out.margin = margin;
                out.precision_used = prec;
                return out;
            }
            if (!margin.certainly_negative()) unresolved = true;
        }
        if (!unresolved) {
            out.precision_used = prec;
            return out;
        }
    }
}

/// Smallest k with 2^k >= ((n^2-1) k ln 2 + ln(16 c_F d_F / 3)) / ε, decided with interval arithmetic.
inline int required_doublings(const Interval& eps, const PolytopeStats& stats, std::size_t n) {
    if (!eps.certainly_positive()) throw AmoebaError("required_doublings: ε must be positive");
    const mpfr_prec_t prec = std::max<mpfr_prec_t>(eps.prec(), 128);
    const Rational c = Rational(16) * Rational(stats.c_F) * stats.d_F / Rational(3);
    const Interval log_c = log(Interval::from_rational(c, prec));
    const Interval ln2 = Interval::ln2(prec);
    const long nn = static_cast<long>(n * n) - 1;
    for (int k = 0; k < 4096; ++k) {
        const Interval lhs = Interval::from_int(1, prec).mul_2exp(k) * eps;
        const Interval rhs = Interval::from_int(BigInt(nn) * k, prec) * ln2 + log_c;
        // An undecided comparison is treated as not yet satisfied.
        if ((lhs - rhs).certainly_positive()) return k;
    }
    throw AmoebaError("required_doublings: no k found");
}

inline int required_doublings(const Rational& eps, const PolytopeStats& stats, std::size_t n) {
    return required_doublings(Interval::from_rational(eps, 256), stats, n);
}

/// Component index α = winner / N^{n-1} with N = 2^k when that is an exact lattice point of Δ.
inline std::optional<Exponent> classify_component(const Exponent& winner, int k, std::size_t n,
                                                  const NewtonPolytope& delta) {
    if (winner.size() != n) throw ArityError("classify_component: winner dimension mismatch");
    const BigInt scale = pow_int(BigInt(2), static_cast<unsigned long>(k) * (n - 1));
    Exponent alpha(n);
    for (std::size_t j = 0; j < n; ++j) {
        const BigInt w = static_cast<long>(winner[j]);
        if (!mpz_divisible_p(w.get_mpz_t(), scale.get_mpz_t())) return std::nullopt;
        BigInt q;
        mpz_divexact(q.get_mpz_t(), w.get_mpz_t(), scale.get_mpz_t());
        alpha[j] = q.get_si();
    }
    if (!delta.contains(alpha)) return std::nullopt;
    return alpha;
}

}  // namespace amoeba
