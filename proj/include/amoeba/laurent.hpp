#pragma once

// Sparse Laurent polynomials with exact integer coefficients.

#include "amoeba/interval.hpp"
#include "amoeba/kronecker.hpp"
#include "amoeba/numeric.hpp"

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace amoeba {

class LaurentPoly {
public:
    /// Terms keyed by exponent tuple in lexicographic order; no zero coefficient is ever stored.
    using TermMap = std::map<Exponent, BigInt>;

    LaurentPoly() : nvars_(1) {}
    explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {
        if (nvars == 0) throw ArityError("a Laurent polynomial needs at least one variable");
    }

    static LaurentPoly constant(std::size_t nvars, const BigInt& c) {
        LaurentPoly p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }
    static LaurentPoly monomial(std::size_t nvars, Exponent e, const BigInt& c = 1) {
        LaurentPoly p(nvars);
        p.add_term(std::move(e), c);
        return p;
    }
    static LaurentPoly from_terms(std::size_t nvars, std::initializer_list<std::pair<Exponent, long>> terms) {
        LaurentPoly p(nvars);
        for (const auto& [e, c] : terms) p.add_term(e, BigInt(c));
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    const TermMap& terms() const noexcept { return terms_; }

    BigInt coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    /// Accumulates c·X^e, dropping the term if it cancels.
    void add_term(Exponent e, const BigInt& c) {
        if (e.size() != nvars_) throw ArityError("exponent length does not match nvars");
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    std::int64_t min_exponent(std::size_t var) const {
        std::int64_t m = std::numeric_limits<std::int64_t>::max();
        for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
        return terms_.empty() ? 0 : m;
    }
    std::int64_t max_exponent(std::size_t var) const {
        std::int64_t m = std::numeric_limits<std::int64_t>::min();
        for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
        return terms_.empty() ? 0 : m;
    }
    /// Degree in one variable (requires nonnegative exponents to be meaningful).
    std::int64_t degree(std::size_t var) const { return max_exponent(var); }

    bool is_polynomial() const {
        for (const auto& [e, c] : terms_)
            for (auto v : e)
                if (v < 0) return false;
        return true;
    }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                                                     terms_.begin()->first.end(),
                                                                     [](std::int64_t v) { return v == 0; }));
    }

    std::size_t max_coeff_bits() const {
        std::size_t b = 0;
        for (const auto& [e, c] : terms_) b = std::max(b, bit_length(c));
        return b;
    }
    BigInt l1_norm() const {
        BigInt s = 0;
        for (const auto& [e, c] : terms_) s += abs(c);
        return s;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    LaurentPoly operator-() const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const BigInt& s) {
        LaurentPoly r(a.nvars_);
        if (sgn(s) == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, c * s);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return multiply(a, b); }

    /// Schoolbook sparse product.
    static LaurentPoly multiply_sparse(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_arity(b);
        LaurentPoly r(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    /// Product through one Kronecker-packed big-integer multiplication.
    static LaurentPoly multiply_dense(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_arity(b);
        if (a.is_zero() || b.is_zero()) return LaurentPoly(a.nvars_);
        auto [da, oa] = a.to_dense();
        DenseBox prod;
        Exponent offset(a.nvars_);
        if (&a == &b) {
            prod = kronecker_multiply(da, da);
            for (std::size_t j = 0; j < offset.size(); ++j) offset[j] = 2 * oa[j];
        } else {
            auto [db, ob] = b.to_dense();
            prod = kronecker_multiply(da, db);
            for (std::size_t j = 0; j < offset.size(); ++j) offset[j] = oa[j] + ob[j];
        }
        return from_dense(prod, offset);
    }

    /// Exact product; dispatches to the dense route when both operands are large and dense enough.
    static LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_arity(b);
        if (a.size() * b.size() < 4096) return multiply_sparse(a, b);
        const double fill_a = static_cast<double>(a.size()) / static_cast<double>(a.box_cells());
        const double fill_b = static_cast<double>(b.size()) / static_cast<double>(b.box_cells());
        if (fill_a < 0.05 || fill_b < 0.05) return multiply_sparse(a, b);
        return multiply_dense(a, b);
    }

    /// Multiplies by the monomial X^shift.
    LaurentPoly shifted(const Exponent& shift) const {
        if (shift.size() != nvars_) throw ArityError("shift length does not match nvars");
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            for (std::size_t j = 0; j < f.size(); ++j) f[j] += shift[j];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// Shifts so that every variable's minimal exponent is zero.
    LaurentPoly normalized_shift() const {
        Exponent s(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) s[j] = -min_exponent(j);
        return shifted(s);
    }

    /// F(X^-1), i.e. every exponent negated.
    LaurentPoly inverted() const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            for (auto& v : f) v = -v;
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// F(X_1^m, ..., X_n^m).
    LaurentPoly expanded(std::int64_t m) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            for (auto& v : f) v *= m;
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// Inverse of expanded(m); nullopt when some exponent is not divisible by m.
    std::optional<LaurentPoly> collapsed(std::int64_t m) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            for (auto& v : f) {
                if (v % m != 0) return std::nullopt;
                v /= m;
            }
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// F(s_1 X_1, ..., s_n X_n) for signs s_j in {+1,-1}.
    LaurentPoly sign_substituted(const std::vector<int>& signs) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            int s = 1;
            for (std::size_t j = 0; j < nvars_; ++j)
                if (signs[j] < 0 && (e[j] % 2 != 0)) s = -s;
            r.terms_.emplace(e, s > 0 ? c : BigInt(-c));
        }
        return r;
    }

    /// Partial derivative with respect to X_var.
    LaurentPoly derivative(std::size_t var) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent f = e;
            f[var] -= 1;
            r.terms_.emplace(std::move(f), c * BigInt(static_cast<long>(e[var])));
        }
        return r;
    }

    /// X_var · ∂F/∂X_var, the logarithmic derivative numerator.
    LaurentPoly euler_derivative(std::size_t var) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_)
            if (e[var] != 0) r.terms_.emplace(e, c * BigInt(static_cast<long>(e[var])));
        return r;
    }

    /// Adds `count` new variables after the existing ones.
    LaurentPoly with_extra_vars(std::size_t count) const {
        LaurentPoly r(nvars_ + count);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            f.resize(nvars_ + count, 0);
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// Exact evaluation at an integer point of a polynomial (nonnegative exponents).
    BigInt evaluate_integer(std::span<const BigInt> z) const {
        BigInt s = 0;
        for (const auto& [e, c] : terms_) {
            BigInt t = c;
            for (std::size_t j = 0; j < nvars_; ++j) {
                if (e[j] < 0) throw AmoebaError("evaluate_integer: negative exponent");
                t *= pow_int(z[j], static_cast<unsigned long>(e[j]));
            }
            s += t;
        }
        return s;
    }

    Rational evaluate_rational(std::span<const Rational> z) const {
        Rational s = 0;
        for (const auto& [e, c] : terms_) {
            Rational t(c);
            for (std::size_t j = 0; j < nvars_; ++j) {
                const auto k = static_cast<unsigned long>(e[j] < 0 ? -e[j] : e[j]);
                Rational p(pow_int(z[j].get_num(), k), pow_int(z[j].get_den(), k));
                t *= e[j] < 0 ? Rational(1) / p : p;
            }
            s += t;
        }
        s.canonicalize();
        return s;
    }

    std::complex<double> evaluate(std::span<const std::complex<double>> z) const {
        std::complex<double> s = 0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = c.get_d();
            for (std::size_t j = 0; j < nvars_; ++j)
                if (e[j] != 0) t *= std::pow(z[j], static_cast<int>(e[j]));
            s += t;
        }
        return s;
    }

    ComplexInterval evaluate(std::span<const ComplexInterval> z) const {
        const mpfr_prec_t prec = z.empty() ? 128 : z[0].prec();
        ComplexInterval s(Interval::from_int(0, prec), Interval::from_int(0, prec));
        for (const auto& [e, c] : terms_) {
            ComplexInterval t(Interval::from_int(c, prec), Interval::from_int(0, prec));
            for (std::size_t j = 0; j < nvars_; ++j)
                if (e[j] != 0) t = t * pow(z[j], e[j]);
            s += t;
        }
        return s;
    }

    /// Dense box with the minimal exponents as offset.
    std::pair<DenseBox, Exponent> to_dense() const {
        Exponent lo(nvars_), hi(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) {
            lo[j] = min_exponent(j);
            hi[j] = max_exponent(j);
        }
        std::vector<std::size_t> ext(nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) ext[j] = static_cast<std::size_t>(hi[j] - lo[j] + 1);
        DenseBox box(ext);
        const auto st = box.strides();
        for (const auto& [e, c] : terms_) {
            std::size_t lin = 0;
            for (std::size_t j = 0; j < nvars_; ++j) lin += static_cast<std::size_t>(e[j] - lo[j]) * st[j];
            box.data[lin] = c;
        }
        return {std::move(box), std::move(lo)};
    }

    static LaurentPoly from_dense(const DenseBox& box, const Exponent& offset) {
        const std::size_t nd = box.extents.size();
        LaurentPoly r(nd);
        std::vector<std::size_t> idx(nd, 0);
        Exponent e(nd);
        for (std::size_t lin = 0; lin < box.data.size(); ++lin) {
            if (sgn(box.data[lin]) != 0) {
                for (std::size_t j = 0; j < nd; ++j) e[j] = offset[j] + static_cast<std::int64_t>(idx[j]);
                r.terms_.emplace_hint(r.terms_.end(), e, box.data[lin]);
            }
            for (std::size_t j = nd; j-- > 0;) {
                if (++idx[j] < box.extents[j]) break;
                idx[j] = 0;
            }
        }
        return r;
    }

private:
    void check_arity(const LaurentPoly& o) const {
        if (o.nvars_ != nvars_)
            throw ArityError("arity mismatch: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_));
    }
    double box_cells() const {
        double cells = 1;
        for (std::size_t j = 0; j < nvars_; ++j)
            cells *= static_cast<double>(max_exponent(j) - min_exponent(j) + 1);
        return cells;
    }

    std::size_t nvars_;
    TermMap terms_;
};

}  // namespace amoeba
