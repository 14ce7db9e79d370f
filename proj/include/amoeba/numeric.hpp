#pragma once

// Exact scalar types and small helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace amoeba {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Exponent tuple of a Laurent monomial.
using Exponent = std::vector<std::int64_t>;

/// A point of R^n given by exact rational coordinates.
using RationalPoint = std::vector<Rational>;

class AmoebaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when two polynomials of different arity are combined.
class ArityError : public AmoebaError {
public:
    using AmoebaError::AmoebaError;
};

/// Raised when a configured term-count or coefficient-size cap is exceeded.
class ResourceError : public AmoebaError {
public:
    ResourceError(const std::string& what, int reached_k)
        : AmoebaError(what), reached_k_(reached_k) {}
    int reached_k() const noexcept { return reached_k_; }

private:
    int reached_k_;
};

inline std::size_t bit_length(const BigInt& v) {
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "12", "-3/4" or a decimal such as "0.25" / "-1.5e-3" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) throw AmoebaError("empty number");
    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0) throw AmoebaError("bad rational: " + text);
        if (q.get_den() == 0) throw AmoebaError("zero denominator: " + text);
        q.canonicalize();
        return q;
    }
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool dot = false;
    bool any = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any = true;
            if (dot) --scale;
        } else if (c == '.' && !dot) {
            dot = true;
        } else if (c == 'e' || c == 'E') {
            ++i;
            std::size_t used = 0;
            long e = 0;
            try {
                e = std::stol(s.substr(i), &used);
            } catch (const std::exception&) {
                throw AmoebaError("bad exponent in number: " + text);
            }
            if (i + used != s.size()) throw AmoebaError("bad number: " + text);
            scale += e;
            i = s.size();
            break;
        } else {
            throw AmoebaError("bad number: " + text);
        }
    }
    if (!any) throw AmoebaError("bad number: " + text);
    BigInt num(digits, 10);
    if (neg) num = -num;
    BigInt ten = 10;
    Rational q;
    if (scale >= 0)
        q = Rational(num * pow_int(ten, static_cast<unsigned long>(scale)));
    else
        q = make_rational(num, pow_int(ten, static_cast<unsigned long>(-scale)));
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

/// Smallest k >= 0 with 2^k >= v (v > 0).
inline int ceil_log2(const BigInt& v) {
    if (v <= 1) return 0;
    BigInt w = v - 1;
    return static_cast<int>(bit_length(w));
}

}  // namespace amoeba
