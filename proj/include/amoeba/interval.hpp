#pragma once

// Certified real and complex arithmetic on MPFR endpoints.
//
// An Interval [lo, hi] has dyadic endpoints; every operation rounds the
// lower endpoint toward -inf and the upper endpoint toward +inf, so the
// result always encloses the exact value of the operation applied to any
// points of the operands.

#include "amoeba/numeric.hpp"

#include <mpfr.h>

#include <algorithm>
#include <complex>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

namespace amoeba {

/// RAII owner of one mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }

    std::string str(int digits = 20) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

private:
    mpfr_t v_;
};

inline int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.get(), b.get()); }

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128) : lo_(prec), hi_(prec) {}

    static Interval from_int(const BigInt& v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_rational(const Rational& q, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_double(double v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }
    static Interval from_bigfloat(const BigFloat& v) {
        Interval r(v.prec());
        mpfr_set(r.lo_.get(), v.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), v.get(), MPFR_RNDU);
        return r;
    }
    /// [c - r, c + r] rounded outward.
    static Interval around(const BigFloat& c, const BigFloat& rad) {
        Interval r(c.prec());
        mpfr_sub(r.lo_.get(), c.get(), rad.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), c.get(), rad.get(), MPFR_RNDU);
        return r;
    }
    static Interval hull(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    static Interval entire(mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_inf(r.lo_.get(), -1);
        mpfr_set_inf(r.hi_.get(), 1);
        return r;
    }
    static Interval pi(mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
        mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
        return r;
    }
    static Interval ln2(mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
        mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
        return r;
    }

    const BigFloat& lower() const { return lo_; }
    const BigFloat& upper() const { return hi_; }
    mpfr_prec_t prec() const { return std::max(lo_.prec(), hi_.prec()); }

    bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
    bool contains_zero() const { return !certainly_positive() && !certainly_negative(); }
    bool contains(const Interval& o) const {
        return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
    }
    bool intersects(const Interval& o) const {
        return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
    }
    /// True when every point of *this is strictly below every point of o.
    bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_.get(), o.lo_.get()); }

    double mid() const {
        BigFloat m(prec() + 1);
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m.to_double();
    }
    BigFloat mid_big() const {
        BigFloat m(prec() + 1);
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }
    double width() const {
        BigFloat w(53);
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w.to_double();
    }
    double lower_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
    double upper_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

    /// Relative width (hi-lo)/min(|lo|,|hi|); infinity when the interval meets zero.
    double relative_width() const {
        if (contains_zero()) return std::numeric_limits<double>::infinity();
        BigFloat w(64), m(64);
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        if (certainly_positive())
            mpfr_set(m.get(), lo_.get(), MPFR_RNDD);
        else
            mpfr_neg(m.get(), hi_.get(), MPFR_RNDD);
        mpfr_div(w.get(), w.get(), m.get(), MPFR_RNDU);
        return w.to_double();
    }

    /// Exact dyadic endpoints as rationals.
    Rational lower_rational() const { return to_rational(lo_); }
    Rational upper_rational() const { return to_rational(hi_); }

    Interval operator-() const {
        Interval r(prec());
        mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        const mpfr_prec_t p = std::max(a.prec(), b.prec());
        Interval r(p);
        BigFloat t(p);
        const BigFloat* xs[2] = {&a.lo_, &a.hi_};
        const BigFloat* ys[2] = {&b.lo_, &b.hi_};
        bool first = true;
        for (auto* x : xs)
            for (auto* y : ys) {
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
                if (mpfr_nan_p(t.get())) mpfr_set_zero(t.get(), 1);  // 0 * inf
                if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
                if (mpfr_nan_p(t.get())) mpfr_set_zero(t.get(), 1);
                if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) return entire(std::max(a.prec(), b.prec()));
        const mpfr_prec_t p = std::max(a.prec(), b.prec());
        Interval inv(p);
        mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
        mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
        return a * inv;
    }
    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }

    Interval mul_2exp(long e) const {
        Interval r(*this);
        mpfr_mul_2si(r.lo_.get(), lo_.get(), e, MPFR_RNDD);
        mpfr_mul_2si(r.hi_.get(), hi_.get(), e, MPFR_RNDU);
        return r;
    }

    friend Interval sqr(const Interval& a) {
        Interval r = a * a;
        if (a.contains_zero()) mpfr_set_zero(r.lo_.get(), 1);
        return r;
    }
    friend Interval abs(const Interval& a) {
        if (a.certainly_positive() || mpfr_zero_p(a.lo_.get())) return a;
        if (a.certainly_negative()) return -a;
        Interval r(a.prec());
        mpfr_set_zero(r.lo_.get(), 1);
        mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval exp(const Interval& a) {
        Interval r(a.prec());
        mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    /// Natural log; the lower end is -inf when the argument meets zero.
    friend Interval log(const Interval& a) {
        Interval r(a.prec());
        if (mpfr_sgn(a.lo_.get()) <= 0)
            mpfr_set_inf(r.lo_.get(), -1);
        else
            mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        if (mpfr_sgn(a.hi_.get()) <= 0)
            mpfr_set_inf(r.hi_.get(), -1);
        else
            mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval sqrt(const Interval& a) {
        Interval r(a.prec());
        if (mpfr_sgn(a.lo_.get()) <= 0)
            mpfr_set_zero(r.lo_.get(), 1);
        else
            mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        if (mpfr_sgn(a.hi_.get()) <= 0)
            mpfr_set_zero(r.hi_.get(), 1);
        else
            mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
        return os << '[' << a.lo_.str(17) << ", " << a.hi_.str(17) << ']';
    }

private:
    static Rational to_rational(const BigFloat& f) {
        if (mpfr_zero_p(f.get())) return Rational(0);
        if (!mpfr_number_p(f.get())) throw AmoebaError("non-finite interval endpoint");
        BigInt m;
        const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), f.get());
        Rational q(m);
        if (e >= 0)
            mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
        else
            mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
        return q;
    }

    BigFloat lo_;
    BigFloat hi_;
};

/// Rectangular complex enclosure.
struct ComplexInterval {
    Interval re;
    Interval im;

    explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    static ComplexInterval from_rationals(const Rational& r, const Rational& i, mpfr_prec_t prec) {
        return {Interval::from_rational(r, prec), Interval::from_rational(i, prec)};
    }
    static ComplexInterval from_complex(std::complex<double> z, mpfr_prec_t prec) {
        return {Interval::from_double(z.real(), prec), Interval::from_double(z.imag(), prec)};
    }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    std::complex<double> mid() const { return {re.mid(), im.mid()}; }

    /// Point enclosure at the midpoint, used to recentre iterations.
    ComplexInterval midpoint() const { return {Interval::from_bigfloat(re.mid_big()), Interval::from_bigfloat(im.mid_big())}; }
    std::complex<long double> mid_ld() const { return {re.mid_big().to_long_double(), im.mid_big().to_long_double()}; }

    Interval norm_sq() const { return sqr(re) + sqr(im); }
    Interval abs() const { return sqrt(norm_sq()); }
    ComplexInterval conj() const { return {re, -im}; }

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    ComplexInterval operator-() const { return {-re, -im}; }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const Interval& s) {
        return {a.re * s, a.im * s};
    }
    friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
        const Interval d = b.norm_sq();
        const ComplexInterval n = a * b.conj();
        return {n.re / d, n.im / d};
    }
    ComplexInterval& operator+=(const ComplexInterval& o) { return *this = *this + o; }
    ComplexInterval& operator*=(const ComplexInterval& o) { return *this = *this * o; }
};

inline ComplexInterval pow(const ComplexInterval& z, std::int64_t e) {
    ComplexInterval base = z;
    if (e < 0) {
        ComplexInterval one(Interval::from_int(1, z.prec()), Interval::from_int(0, z.prec()));
        base = one / z;
        e = -e;
    }
    ComplexInterval r(Interval::from_int(1, z.prec()), Interval::from_int(0, z.prec()));
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

}  // namespace amoeba
