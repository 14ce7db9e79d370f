#pragma once

// Univariate polynomials over Q(i): Schur-Cohn disk test, unit-circle roots, certified root isolation.

#include "amoeba/interval.hpp"
#include "amoeba/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace amoeba {

struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    GaussRational(long v) : re(v), im(0) {}
    GaussRational(const BigInt& v) : re(v), im(0) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    Rational norm() const { return Rational(re * re + im * im); }
    GaussRational conj() const { return {re, Rational(-im)}; }

    ComplexInterval enclose(mpfr_prec_t prec) const { return ComplexInterval::from_rationals(re, im, prec); }
    std::complex<long double> to_complex() const {
        return {static_cast<long double>(re.get_d()), static_cast<long double>(im.get_d())};
    }

    friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {Rational(a.re + b.re), Rational(a.im + b.im)};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {Rational(a.re - b.re), Rational(a.im - b.im)};
    }
    GaussRational operator-() const { return {Rational(-re), Rational(-im)}; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
    }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
        const Rational d = b.norm();
        if (sgn(d) == 0) throw AmoebaError("division by zero in Q(i)");
        const GaussRational n = a * b.conj();
        return {Rational(n.re / d), Rational(n.im / d)};
    }
    GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
    GaussRational& operator-=(const GaussRational& o) { return *this = *this - o; }
    GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }
};

/// Rational point e^{iθ} = ((1 - t²) + 2t i) / (1 + t²) on the unit circle.
inline GaussRational unit_point(const Rational& t) {
    const Rational d = 1 + t * t;
    return {Rational((1 - t * t) / d), Rational(2 * t / d)};
}

class UnivariatePoly {
public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<GaussRational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UnivariatePoly from_integers(const std::vector<BigInt>& coeffs) {
        std::vector<GaussRational> c;
        c.reserve(coeffs.size());
        for (const auto& v : coeffs) c.emplace_back(v);
        return UnivariatePoly(std::move(c));
    }
    static UnivariatePoly from_integers(std::initializer_list<long> coeffs) {
        std::vector<GaussRational> c;
        for (long v : coeffs) c.emplace_back(v);
        return UnivariatePoly(std::move(c));
    }
    /// A one-variable Laurent polynomial, shifted by X^{-min exponent} when negative exponents occur.
    static UnivariatePoly from_laurent(const LaurentPoly& f) {
        if (f.nvars() != 1) throw ArityError("from_laurent: expected one variable");
        if (f.is_zero()) return {};
        const std::int64_t lo = std::min<std::int64_t>(0, f.min_exponent(0));
        std::vector<GaussRational> c(static_cast<std::size_t>(f.max_exponent(0) - lo + 1));
        for (const auto& [e, v] : f.terms()) c[static_cast<std::size_t>(e[0] - lo)] = GaussRational(v);
        return UnivariatePoly(std::move(c));
    }
    static UnivariatePoly monomial(const GaussRational& c, std::size_t k) {
        std::vector<GaussRational> v(k + 1);
        v[k] = c;
        return UnivariatePoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<GaussRational>& coeffs() const { return c_; }
    GaussRational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : GaussRational(); }
    const GaussRational& lead() const {
        if (c_.empty()) throw AmoebaError("leading coefficient of the zero polynomial");
        return c_.back();
    }
    bool is_real() const {
        return std::all_of(c_.begin(), c_.end(), [](const GaussRational& g) { return g.is_real(); });
    }

    UnivariatePoly conj() const {
        auto c = c_;
        for (auto& v : c) v = v.conj();
        return UnivariatePoly(std::move(c));
    }
    /// z^d conj(p(1 / conj z)) for d >= degree.
    UnivariatePoly conjugate_reciprocal(int d) const {
        if (d < degree()) throw AmoebaError("conjugate_reciprocal: degree bound below the degree");
        std::vector<GaussRational> c(static_cast<std::size_t>(d + 1));
        for (std::size_t k = 0; k < c_.size(); ++k) c[static_cast<std::size_t>(d) - k] = c_[k].conj();
        return UnivariatePoly(std::move(c));
    }
    UnivariatePoly conjugate_reciprocal() const { return conjugate_reciprocal(degree()); }

    UnivariatePoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<GaussRational> c(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * GaussRational(static_cast<long>(k));
        return UnivariatePoly(std::move(c));
    }
    UnivariatePoly monic() const {
        if (c_.empty()) return {};
        const GaussRational inv = GaussRational(1) / c_.back();
        auto c = c_;
        for (auto& v : c) v = v * inv;
        return UnivariatePoly(std::move(c));
    }
    /// Positive rational rescaling to coprime Gaussian-integer coefficients.
    UnivariatePoly primitive() const {
        if (c_.empty()) return {};
        BigInt den = 1, num = 0;
        for (const auto& v : c_) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.re.get_den_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.im.get_den_mpz_t());
        }
        for (const auto& v : c_) {
            const Rational a = v.re * den, b = v.im * den;
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), a.get_num_mpz_t());
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), b.get_num_mpz_t());
        }
        const Rational s(den, num);
        auto c = c_;
        for (auto& v : c) {
            v.re *= s;
            v.im *= s;
            v.re.canonicalize();
            v.im.canonicalize();
        }
        return UnivariatePoly(std::move(c));
    }
    /// Removes the factor X^m; returns m.
    std::size_t strip_zero_roots() {
        std::size_t m = 0;
        while (m < c_.size() && c_[m].is_zero()) ++m;
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(m));
        return m;
    }

    GaussRational evaluate(const GaussRational& z) const {
        GaussRational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }
    ComplexInterval evaluate(const ComplexInterval& z) const {
        ComplexInterval acc(Interval::from_int(0, z.prec()), Interval::from_int(0, z.prec()));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->enclose(z.prec());
        return acc;
    }
    std::complex<long double> evaluate(std::complex<long double> z) const {
        std::complex<long double> acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex();
        return acc;
    }

    std::vector<ComplexInterval> enclose(mpfr_prec_t prec) const {
        std::vector<ComplexInterval> out;
        out.reserve(c_.size());
        for (const auto& v : c_) out.push_back(v.enclose(prec));
        return out;
    }

    friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) { return a.c_ == b.c_; }
    friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
        std::vector<GaussRational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
        return UnivariatePoly(std::move(c));
    }
    friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) {
        std::vector<GaussRational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
        return UnivariatePoly(std::move(c));
    }
    friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussRational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return UnivariatePoly(std::move(c));
    }
    friend UnivariatePoly operator*(const UnivariatePoly& a, const GaussRational& s) {
        auto c = a.c_;
        for (auto& v : c) v = v * s;
        return UnivariatePoly(std::move(c));
    }

    /// Euclidean division over Q(i).
    static std::pair<UnivariatePoly, UnivariatePoly> divmod(const UnivariatePoly& a, const UnivariatePoly& b) {
        if (b.is_zero()) throw AmoebaError("polynomial division by zero");
        if (a.degree() < b.degree()) return {UnivariatePoly(), a};
        auto r = a.c_;
        std::vector<GaussRational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
        const GaussRational inv = GaussRational(1) / b.lead();
        const std::size_t db = static_cast<std::size_t>(b.degree());
        for (std::size_t k = q.size(); k-- > 0;) {
            const GaussRational t = r[k + db] * inv;
            q[k] = t;
            if (t.is_zero()) continue;
            for (std::size_t j = 0; j <= db; ++j) r[k + j] -= t * b.c_[j];
        }
        r.resize(db);
        return {UnivariatePoly(std::move(q)), UnivariatePoly(std::move(r))};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<GaussRational> c_;
};

/// Monic greatest common divisor; zero only when both inputs are zero.
inline UnivariatePoly gcd(UnivariatePoly a, UnivariatePoly b) {
    while (!b.is_zero()) {
        auto r = UnivariatePoly::divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.primitive();
    }
    return a.monic();
}

inline UnivariatePoly exact_quotient(const UnivariatePoly& a, const UnivariatePoly& b) {
    auto [q, r] = UnivariatePoly::divmod(a, b);
    if (!r.is_zero()) throw AmoebaError("exact_quotient: nonzero remainder");
    return q;
}

/// Yun's square-free decomposition p = c · Π q_m^m; returns the non-constant (q_m, m).
inline std::vector<std::pair<UnivariatePoly, int>> squarefree_decomposition(const UnivariatePoly& p) {
    std::vector<std::pair<UnivariatePoly, int>> out;
    if (p.degree() < 1) return out;
    const auto dp = p.derivative();
    const auto a0 = gcd(p, dp);
    auto b = exact_quotient(p, a0);
    auto c = exact_quotient(dp, a0);
    auto d = c - b.derivative();
    for (int m = 1; b.degree() >= 1; ++m) {
        const auto a = gcd(b, d);
        if (a.degree() >= 1) out.emplace_back(a, m);
        b = exact_quotient(b, a);
        c = exact_quotient(d, a);
        d = c - b.derivative();
    }
    return out;
}

inline UnivariatePoly squarefree_part(const UnivariatePoly& p) {
    if (p.degree() < 1) return p;
    return exact_quotient(p, gcd(p, p.derivative())).monic();
}

/// True iff p has no root in the closed unit disk. Exact Schur-Cohn recursion with
/// T p = conj(a_0) p - a_d p*: when |a_0| > |a_d|, p and T p have the same roots on the circle
/// and the same number inside (Rouché), and deg T p < deg p.
inline bool schur_cohn_stable_disk(UnivariatePoly p) {
    if (p.is_zero()) throw AmoebaError("schur_cohn_stable_disk: zero polynomial");
    while (p.degree() > 0) {
        const GaussRational a0 = p.coeff(0), ad = p.lead();
        if (a0.norm() <= ad.norm()) return false;
        p = (p * a0.conj() - p.conjugate_reciprocal() * ad).primitive();
    }
    return true;
}

struct RootBox {
    Interval re;
    Interval im;
    int multiplicity = 1;
    /// Set when the root was identified as an exact Gaussian rational.
    std::optional<GaussRational> exact;

    ComplexInterval enclosure() const { return {re, im}; }
    std::complex<double> mid() const { return {re.mid(), im.mid()}; }
    bool overlaps(const RootBox& o) const { return re.intersects(o.re) && im.intersects(o.im); }
};

namespace detail {

/// Simplest rational (least denominator) in the closed interval [a, b], a <= b.
inline Rational simplest_rational(Rational a, Rational b) {
    if (a > b) std::swap(a, b);
    if (sgn(a) <= 0 && sgn(b) >= 0) return 0;
    if (sgn(b) < 0) return -simplest_rational(-b, -a);
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    if (Rational(fl) == a) return a;
    if (Rational(fl + 1) <= b) return Rational(fl + 1);
    // a, b share the integer part fl: recurse on reciprocals of the fractional parts.
    const Rational fa = a - fl, fb = b - fl;
    const Rational inner = simplest_rational(Rational(1 / fb), Rational(1 / fa));
    return Rational(fl + 1 / inner);
}

inline Rational cauchy_bound(const UnivariatePoly& p) {
    Rational m = 0;
    const Rational lead = p.lead().norm();
    for (int k = 0; k < p.degree(); ++k) {
        const Rational r = p.coeff(static_cast<std::size_t>(k)).norm() / lead;
        if (r > m) m = r;
    }
    // |root| <= 1 + max |a_k / a_d| <= 2 + max |a_k / a_d|^2.
    return Rational(m + 2);
}

/// Sturm sequence of a real polynomial.
inline std::vector<UnivariatePoly> sturm_sequence(const UnivariatePoly& p) {
    std::vector<UnivariatePoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        auto r = UnivariatePoly::divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        // Keep the sign: -r rescaled by a positive rational.
        seq.push_back((r * GaussRational(-1)).primitive());
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

inline int sign_variations(const std::vector<UnivariatePoly>& seq, const Rational& x) {
    int count = 0, prev = 0;
    for (const auto& q : seq) {
        const int s = sgn(q.evaluate(GaussRational(x)).re);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

/// Isolating intervals for the real roots of a square-free real polynomial. Degenerate
/// intervals [r, r] mark exact rational roots. Intervals are refined to width <= width.
inline std::vector<std::pair<Rational, Rational>> real_root_intervals(const UnivariatePoly& p, const Rational& width) {
    std::vector<std::pair<Rational, Rational>> out;
    if (p.degree() < 1) return out;
    const auto seq = sturm_sequence(p);
    const Rational bound = cauchy_bound(p);
    auto is_root = [&](const Rational& x) { return p.evaluate(GaussRational(x)).is_zero(); };
    struct Job {
        Rational a, b;
        int va, vb;
    };
    std::vector<Job> stack{{-bound, bound, sign_variations(seq, -bound), sign_variations(seq, bound)}};
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        const int count = j.va - j.vb;
        if (count <= 0) continue;
        if (count == 1 && j.b - j.a <= width) {
            out.emplace_back(j.a, j.b);
            continue;
        }
        Rational m = (j.a + j.b) / 2;
        if (count == 1) {
            // Bisect by the sign of p; endpoints are never roots here.
            if (is_root(m)) {
                out.emplace_back(m, m);
                continue;
            }
            const int sa = sgn(p.evaluate(GaussRational(j.a)).re), sm = sgn(p.evaluate(GaussRational(m)).re);
            if (sa != sm)
                stack.push_back({j.a, m, 1, 0});
            else
                stack.push_back({m, j.b, 1, 0});
            continue;
        }
        // Sturm counts need endpoints that are not roots.
        while (is_root(m)) m = (m + j.b) / 2;
        const int vm = sign_variations(seq, m);
        stack.push_back({j.a, m, j.va, vm});
        stack.push_back({m, j.b, vm, j.vb});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// (w + i)^d p((w - i) / (w + i)): unit-circle roots of p other than 1 become real roots.
inline UnivariatePoly cayley_transform(const UnivariatePoly& p) {
    const int d = p.degree();
    const UnivariatePoly wm({GaussRational(Rational(0), Rational(-1)), GaussRational(1)});
    const UnivariatePoly wp({GaussRational(Rational(0), Rational(1)), GaussRational(1)});
    std::vector<UnivariatePoly> pm{UnivariatePoly::from_integers({1})}, pp{UnivariatePoly::from_integers({1})};
    for (int k = 1; k <= d; ++k) {
        pm.push_back(pm.back() * wm);
        pp.push_back(pp.back() * wp);
    }
    UnivariatePoly h;
    for (int k = 0; k <= d; ++k) {
        const auto c = p.coeff(static_cast<std::size_t>(k));
        if (!c.is_zero()) h = h + pm[static_cast<std::size_t>(k)] * pp[static_cast<std::size_t>(d - k)] * c;
    }
    return h;
}

inline UnivariatePoly real_part(const UnivariatePoly& p) {
    std::vector<GaussRational> c;
    for (const auto& v : p.coeffs()) c.emplace_back(v.re);
    return UnivariatePoly(std::move(c));
}
inline UnivariatePoly imag_part(const UnivariatePoly& p) {
    std::vector<GaussRational> c;
    for (const auto& v : p.coeffs()) c.emplace_back(v.im);
    return UnivariatePoly(std::move(c));
}

/// Circle roots of a square-free p, each with multiplicity 1.
inline std::vector<RootBox> circle_roots_squarefree(const UnivariatePoly& p, mpfr_prec_t prec) {
    std::vector<RootBox> out;
    if (p.degree() < 1) return out;
    const auto g = gcd(p, p.conjugate_reciprocal());
    if (g.degree() < 1) return out;
    if (g.evaluate(GaussRational(1)).is_zero()) {
        out.push_back({Interval::from_int(1, prec), Interval::from_int(0, prec), 1, GaussRational(1)});
    }
    const auto h = cayley_transform(g);
    auto r = gcd(real_part(h), imag_part(h));
    if (r.degree() < 1) return out;
    r = squarefree_part(r);
    const Rational width(BigInt(1), BigInt(1) << static_cast<unsigned long>(prec + 2));
    for (auto [a, b] : real_root_intervals(r, width)) {
        std::optional<Rational> exact;
        if (a == b) {
            exact = a;
        } else {
            const Rational s = simplest_rational(a, b);
            if (r.evaluate(GaussRational(s)).is_zero()) exact = s;
        }
        const mpfr_prec_t wp = prec + 16;
        Interval w = exact ? Interval::from_rational(*exact, wp) : Interval::hull(Interval::from_rational(a, wp),
                                                                                   Interval::from_rational(b, wp));
        const Interval w2 = sqr(w);
        const Interval den = w2 + Interval::from_int(1, wp);
        RootBox box{(w2 - Interval::from_int(1, wp)) / den, -(w.mul_2exp(1) / den), 1, std::nullopt};
        if (exact) {
            const Rational q = *exact;
            const Rational dd = q * q + 1;
            box.exact = GaussRational(Rational((q * q - 1) / dd), Rational(-2 * q / dd));
        }
        out.push_back(std::move(box));
    }
    return out;
}

struct RootDisk {
    ComplexInterval center;
    Interval radius;
};

/// Aberth iteration in long double, started on Newton-polygon circles.
inline std::vector<std::complex<long double>> aberth(const std::vector<std::complex<long double>>& c, int max_iter = 500) {
    using C = std::complex<long double>;
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<C> z;
    if (d < 1) return z;
    // Upper convex hull of (k, log|c_k|).
    std::vector<std::pair<int, long double>> pts;
    for (int k = 0; k <= d; ++k)
        if (std::abs(c[static_cast<std::size_t>(k)]) > 0) pts.emplace_back(k, std::log(std::abs(c[static_cast<std::size_t>(k)])));
    std::vector<std::pair<int, long double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            const long double cr = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
            if (cr >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    const long double two_pi = 6.283185307179586476925286766559L;
    if (hull.front().first > 0) {
        for (int k = 0; k < hull.front().first; ++k) z.emplace_back(0, 0);
    }
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const int m = hull[s + 1].first - hull[s].first;
        const long double r = std::exp((hull[s].second - hull[s + 1].second) / m);
        for (int j = 0; j < m; ++j) z.push_back(std::polar(r, two_pi * j / m + two_pi * static_cast<long double>(s) / d + 0.4L));
    }
    auto eval = [&](C x, C* dp) {
        C p = 0, q = 0;
        for (int k = d; k >= 0; --k) {
            q = q * x + p;
            p = p * x + c[static_cast<std::size_t>(k)];
        }
        *dp = q;
        return p;
    };
    for (int it = 0; it < max_iter; ++it) {
        long double worst = 0;
        for (int i = 0; i < d; ++i) {
            C dp;
            const C p = eval(z[static_cast<std::size_t>(i)], &dp);
            if (p == C(0)) continue;
            const C ratio = p / dp;
            C sum = 0;
            for (int j = 0; j < d; ++j)
                if (j != i) sum += C(1) / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
            const C step = ratio / (C(1) - ratio * sum);
            if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
                z[static_cast<std::size_t>(i)] -= step;
                worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[static_cast<std::size_t>(i)])));
            }
        }
        if (worst < 1e-18L) break;
    }
    return z;
}

/// Certified disks, one per root, for every polynomial in the coefficient box c (lowest first,
/// leading entry not containing zero). Uses Weierstrass corrections W_i: the disks of radius
/// d |W_i| about the approximations contain all roots, and isolated disks contain exactly one.
inline std::optional<std::vector<RootDisk>> enclose_roots(const std::vector<ComplexInterval>& c, mpfr_prec_t prec) {
    const int d = static_cast<int>(c.size()) - 1;
    if (d < 1) return std::vector<RootDisk>{};
    if (c.back().contains_zero()) return std::nullopt;
    std::vector<std::complex<long double>> cl;
    for (const auto& v : c) cl.push_back(v.mid_ld());
    const auto approx = aberth(cl);
    std::vector<ComplexInterval> z(approx.size(), ComplexInterval(prec));
    for (std::size_t i = 0; i < approx.size(); ++i) {
        BigFloat re(prec), im(prec);
        mpfr_set_ld(re.get(), approx[i].real(), MPFR_RNDN);
        mpfr_set_ld(im.get(), approx[i].imag(), MPFR_RNDN);
        z[i] = {Interval::from_bigfloat(re), Interval::from_bigfloat(im)};
    }
    std::vector<ComplexInterval> cm;
    for (const auto& v : c) cm.push_back(v.midpoint());
    auto eval = [&](const std::vector<ComplexInterval>& coeffs, const ComplexInterval& x) {
        ComplexInterval acc(Interval::from_int(0, prec), Interval::from_int(0, prec));
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    auto weierstrass = [&](const std::vector<ComplexInterval>& coeffs, std::size_t i) {
        ComplexInterval den = coeffs.back();
        for (std::size_t j = 0; j < z.size(); ++j)
            if (j != i) den = den * (z[i] - z[j]);
        return eval(coeffs, z[i]) / den;
    };
    // Weierstrass-Durand-Kerner refinement at full precision on the midpoint polynomial.
    const int steps = 4 + static_cast<int>(std::log2(static_cast<double>(prec) / 48.0 + 1.0)) * 2;
    for (int s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < z.size(); ++i) {
            const ComplexInterval w = weierstrass(cm, i);
            if (w.re.width() != w.re.width() || std::isinf(w.re.width()) || std::isinf(w.im.width())) continue;
            z[i] = (z[i] - w).midpoint();
        }
    }
    std::vector<RootDisk> out;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const ComplexInterval w = weierstrass(c, i);
        const Interval r = w.abs() * Interval::from_int(d, prec);
        if (std::isinf(r.upper_double()) || r.upper_double() != r.upper_double()) return std::nullopt;
        out.push_back({z[i], Interval::from_bigfloat(r.upper())});
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            const Interval dist = (out[i].center - out[j].center).abs();
            if (!(out[i].radius + out[j].radius).certainly_less(dist)) return std::nullopt;
        }
    return out;
}

inline RootBox disk_to_box(const RootDisk& disk, int multiplicity) {
    const BigFloat& r = disk.radius.upper();
    return {Interval::around(disk.center.re.mid_big(), r), Interval::around(disk.center.im.mid_big(), r), multiplicity,
            std::nullopt};
}

}  // namespace detail

/// Roots of modulus exactly one, with multiplicities. Exact detection: gcd with the
/// conjugate-reciprocal, Cayley transform to the real line, Sturm isolation.
inline std::vector<RootBox> roots_on_unit_circle(const UnivariatePoly& p, mpfr_prec_t precision_bits = 64) {
    if (p.is_zero()) throw AmoebaError("roots_on_unit_circle: zero polynomial");
    std::vector<RootBox> out;
    auto q = p;
    q.strip_zero_roots();
    for (const auto& [f, m] : squarefree_decomposition(q)) {
        for (auto box : detail::circle_roots_squarefree(f, precision_bits)) {
            box.multiplicity = m;
            out.push_back(std::move(box));
        }
    }
    return out;
}

/// Disjoint boxes around all roots with multiplicities; box widths <= 2^-precision_bits · max(1, |root|).
inline std::vector<RootBox> isolate_roots(const UnivariatePoly& p, mpfr_prec_t precision_bits = 64) {
    if (p.degree() < 1) throw AmoebaError("isolate_roots: degree must be at least 1");
    auto q = p;
    const std::size_t zeros = q.strip_zero_roots();
    std::vector<std::pair<UnivariatePoly, int>> factors = squarefree_decomposition(q);
    for (mpfr_prec_t prec = precision_bits + 64;; prec *= 2) {
        if (prec > 1 << 16) throw AmoebaError("isolate_roots: precision limit reached");
        std::vector<RootBox> out;
        if (zeros > 0)
            out.push_back({Interval::from_int(0, prec), Interval::from_int(0, prec), static_cast<int>(zeros), GaussRational(0)});
        bool ok = true;
        for (const auto& [f, m] : factors) {
            const auto disks = detail::enclose_roots(f.enclose(prec), prec);
            if (!disks) {
                ok = false;
                break;
            }
            for (const auto& dk : *disks) {
                const double scale = std::max(1.0, std::abs(std::complex<double>(dk.center.re.mid(), dk.center.im.mid())));
                if (dk.radius.upper_double() * 2 > std::ldexp(scale, -static_cast<int>(precision_bits))) ok = false;
                out.push_back(detail::disk_to_box(dk, m));
            }
            if (!ok) break;
        }
        for (std::size_t i = 0; ok && i < out.size(); ++i)
            for (std::size_t j = i + 1; ok && j < out.size(); ++j)
                if (out[i].overlaps(out[j])) ok = false;
        if (ok) return out;
    }
}

/// F*(z) = z^d conj(F(1/conj z)) for integer-coefficient F in at most two variables.
inline LaurentPoly conjugate_reciprocal(const LaurentPoly& f, const std::vector<std::int64_t>& degrees) {
    if (f.nvars() > 2) throw ArityError("conjugate_reciprocal: at most two variables");
    if (degrees.size() != f.nvars()) throw ArityError("conjugate_reciprocal: degree tuple length mismatch");
    LaurentPoly out(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        Exponent r(e.size());
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] < 0 || e[j] > degrees[j]) throw AmoebaError("conjugate_reciprocal: degree tuple below the actual degrees");
            r[j] = degrees[j] - e[j];
        }
        out.add_term(std::move(r), c);
    }
    return out;
}

/// Substitutes exact values for every variable except `keep`; the result is a polynomial in
/// that variable after multiplying by X^{-min exponent}.
inline UnivariatePoly specialize(const LaurentPoly& f, std::size_t keep, const std::vector<GaussRational>& values) {
    if (values.size() != f.nvars() || keep >= f.nvars()) throw ArityError("specialize: bad arity");
    if (f.is_zero()) return {};
    const std::int64_t lo = std::min<std::int64_t>(0, f.min_exponent(keep));
    std::vector<GaussRational> c(static_cast<std::size_t>(f.max_exponent(keep) - lo + 1));
    for (const auto& [e, v] : f.terms()) {
        GaussRational t(v);
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j == keep || e[j] == 0) continue;
            GaussRational base = e[j] < 0 ? GaussRational(1) / values[j] : values[j];
            for (std::int64_t k = 0; k < (e[j] < 0 ? -e[j] : e[j]); ++k) t = t * base;
        }
        c[static_cast<std::size_t>(e[keep] - lo)] += t;
    }
    return UnivariatePoly(std::move(c));
}

inline GaussRational evaluate_exact(const LaurentPoly& f, const std::vector<GaussRational>& z) {
    if (z.size() != f.nvars()) throw ArityError("evaluate_exact: bad arity");
    GaussRational acc;
    for (const auto& [e, v] : f.terms()) {
        GaussRational t(v);
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            GaussRational base = e[j] < 0 ? GaussRational(1) / z[j] : z[j];
            for (std::int64_t k = 0; k < (e[j] < 0 ? -e[j] : e[j]); ++k) t = t * base;
        }
        acc += t;
    }
    return acc;
}

}  // namespace amoeba
