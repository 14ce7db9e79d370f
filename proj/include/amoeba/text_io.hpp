#pragma once

// Text grammar and JSON form for Laurent polynomials.
//
//   integer ::= [-]digits
//   var     ::= "X" index
//   factor  ::= var ["^" integer]
//   term    ::= [integer "*"] factor {"*" factor} | integer
//   poly    ::= term {("+"|"-") term}
//
// A leading sign before the first term is accepted as well.

#include "amoeba/laurent.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

namespace amoeba {

class ParseError : public AmoebaError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : AmoebaError(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : s_(text) {}

    LaurentPoly parse(std::size_t min_nvars) {
        struct RawTerm {
            BigInt coeff;
            std::vector<std::pair<std::size_t, std::int64_t>> powers;
        };
        std::vector<RawTerm> raw;
        std::size_t nvars = std::max<std::size_t>(min_nvars, 1);
        skip_ws();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = get() == '-' ? -1 : 1;
            skip_ws();
        }
        while (true) {
            RawTerm t;
            t.coeff = sign;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                t.coeff *= parse_unsigned();
                skip_ws();
                if (peek() == '*') {
                    get();
                    skip_ws();
                    parse_factors(t.powers);
                }
            } else if (peek() == 'X') {
                parse_factors(t.powers);
            } else {
                fail("expected a coefficient or a variable");
            }
            for (const auto& [v, e] : t.powers) nvars = std::max(nvars, v);
            raw.push_back(std::move(t));
            skip_ws();
            if (at_end()) break;
            const char op = get();
            if (op != '+' && op != '-') fail("expected '+' or '-'", pos_ - 1);
            sign = op == '-' ? -1 : 1;
            skip_ws();
        }
        LaurentPoly p(nvars);
        for (const auto& t : raw) {
            Exponent e(nvars, 0);
            for (const auto& [v, k] : t.powers) e[v - 1] += k;
            p.add_term(std::move(e), t.coeff);
        }
        return p;
    }

private:
    void parse_factors(std::vector<std::pair<std::size_t, std::int64_t>>& out) {
        while (true) {
            if (peek() != 'X') fail("expected variable X<index>");
            get();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index");
            const BigInt idx = parse_unsigned();
            if (idx < 1 || idx > 64) fail("variable index out of range 1..64");
            std::int64_t e = 1;
            skip_ws();
            if (peek() == '^') {
                get();
                skip_ws();
                int s = 1;
                if (peek() == '-') {
                    get();
                    s = -1;
                }
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
                const BigInt v = parse_unsigned();
                if (!v.fits_slong_p()) fail("exponent too large");
                e = s * v.get_si();
                skip_ws();
            }
            out.emplace_back(idx.get_ui(), e);
            if (peek() != '*') break;
            get();
            skip_ws();
        }
    }
    BigInt parse_unsigned() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return BigInt(s_.substr(start, pos_ - start), 10);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    char get() { return at_end() ? '\0' : s_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t pos) const { throw ParseError(msg, pos); }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the text grammar; nvars is the largest variable index used, at least `min_nvars`.
inline LaurentPoly parse_poly(const std::string& text, std::size_t min_nvars = 1) {
    return detail::PolyParser(text).parse(min_nvars);
}

/// Canonical text: lexicographic term order, unit coefficients elided.
inline std::string to_text(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const bool neg = sgn(c) < 0;
        const BigInt mag = abs(c);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool has_var = false;
        std::ostringstream vars;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (has_var) vars << '*';
            vars << 'X' << (j + 1);
            if (e[j] != 1) vars << '^' << e[j];
            has_var = true;
        }
        if (!has_var)
            os << mag.get_str();
        else if (mag == 1)
            os << vars.str();
        else
            os << mag.get_str() << '*' << vars.str();
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << to_text(p); }

inline nlohmann::json to_json(const LaurentPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"coeff", c.get_str()}, {"exp", e}});
    return {{"nvars", p.nvars()}, {"terms", terms}};
}

struct ScaledPoly {
    LaurentPoly poly;
    /// Positive integer the rational input was multiplied by.
    BigInt scale = 1;
};

/// Reads the JSON form; rational coefficients are cleared by their least common denominator.
inline ScaledPoly scaled_poly_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("nvars") || !j.contains("terms"))
        throw AmoebaError("polynomial JSON needs \"nvars\" and \"terms\"");
    const auto nvars = j.at("nvars").get<std::size_t>();
    std::vector<std::pair<Exponent, Rational>> terms;
    BigInt lcd = 1;
    for (const auto& t : j.at("terms")) {
        const auto& cj = t.at("coeff");
        const Rational c = cj.is_string() ? parse_rational(cj.get<std::string>())
                                          : Rational(BigInt(std::to_string(cj.get<long long>())));
        auto e = t.at("exp").get<Exponent>();
        if (e.size() != nvars) throw ArityError("term exponent length does not match nvars");
        mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), c.get_den().get_mpz_t());
        terms.emplace_back(std::move(e), c);
    }
    ScaledPoly out{LaurentPoly(nvars), lcd};
    for (auto& [e, c] : terms) {
        Rational s = c * Rational(lcd);
        s.canonicalize();
        out.poly.add_term(std::move(e), s.get_num());
    }
    return out;
}

inline LaurentPoly poly_from_json(const nlohmann::json& j) { return scaled_poly_from_json(j).poly; }

/// Loads a polynomial from a file holding either the JSON form or the text grammar.
inline ScaledPoly read_poly_file(const std::string& path, std::size_t min_nvars = 1) {
    std::ifstream in(path);
    if (!in) throw AmoebaError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        auto sp = scaled_poly_from_json(nlohmann::json::parse(text));
        if (sp.poly.nvars() < min_nvars) sp.poly = sp.poly.with_extra_vars(min_nvars - sp.poly.nvars());
        return sp;
    }
    return {parse_poly(text, min_nvars), 1};
}

}  // namespace amoeba
