#pragma once

// Contours of planar amoebas: the pencil P = F, Q = X1∂1F + u X2∂2F, its Sylvester resultants,
// a parameter sweep over both charts of P¹(R), the exact origin-in-contour test and the Gauss map.

#include "amoeba/resultant.hpp"
#include "amoeba/univariate.hpp"

#include <map>
#include <optional>
#include <string>

namespace amoeba {

class DegeneratePencilError : public AmoebaError {
public:
    using AmoebaError::AmoebaError;
};

class SingularPointError : public AmoebaError {
public:
    using AmoebaError::AmoebaError;
};

/// U: Q = A + u B; V: Q = v A + B, where (A, B) = (X1∂1F, X2∂2F) or (∂1F, ∂2F) when unscaled.
enum class Chart { U, V };

inline const char* chart_name(Chart c) { return c == Chart::U ? "u" : "v"; }

struct Pencil {
    LaurentPoly P;
    LaurentPoly Q;
};

namespace detail {

inline std::pair<LaurentPoly, LaurentPoly> pencil_parts(const LaurentPoly& f, bool scaled) {
    if (f.nvars() != 2) throw ArityError("contour: F must be bivariate");
    if (scaled) return {f.euler_derivative(0), f.euler_derivative(1)};
    return {f.derivative(0), f.derivative(1)};
}

}  // namespace detail

/// P = F and the pencil member at a rational parameter, cleared of denominators.
inline Pencil build_pencil(const LaurentPoly& f, const Rational& param, Chart chart, bool scaled = true) {
    const auto [a, b] = detail::pencil_parts(f, scaled);
    const BigInt num = param.get_num(), den = param.get_den();
    LaurentPoly q = chart == Chart::U ? a * den + b * num : a * num + b * den;
    if (q.is_zero()) throw DegeneratePencilError("pencil member vanishes identically");
    return {f, std::move(q)};
}

/// R_X2 lives in (u, X1) and R_X1 in (u, X2); u is the chart parameter.
struct ResultantPair {
    LaurentPoly R_X2;
    LaurentPoly R_X1;
    Chart chart = Chart::U;
    bool scaled = true;
};

namespace detail {

/// Variables (u, X1, X2): P = F and Q = A + uB (chart U) or uA + B (chart V).
inline std::pair<LaurentPoly, LaurentPoly> symbolic_pencil(const LaurentPoly& f, Chart chart, bool scaled) {
    const auto base = f.normalized_shift();
    const auto [a, b] = pencil_parts(base, scaled);
    const LaurentPoly P = embed(base, {1, 2}, 3);
    const LaurentPoly A = embed(a, {1, 2}, 3), B = embed(b, {1, 2}, 3);
    const LaurentPoly u = LaurentPoly::monomial(3, {1, 0, 0});
    LaurentPoly Q = chart == Chart::U ? A + u * B : u * A + B;
    if (Q.is_zero()) throw DegeneratePencilError("both partial derivatives vanish identically");
    return {P, Q};
}

}  // namespace detail

inline ResultantPair contour_resultants(const LaurentPoly& f, Chart chart, bool scaled = true) {
    const auto [P, Q] = detail::symbolic_pencil(f, chart, scaled);
    ResultantPair out;
    out.R_X2 = resultant(P, Q, 2);
    out.R_X1 = resultant(P, Q, 1);
    out.chart = chart;
    out.scaled = scaled;
    if (out.R_X2.is_zero() || out.R_X1.is_zero())
        throw DegeneratePencilError("resultant vanishes identically (F is not reduced or shares a factor with the pencil)");
    return out;
}

struct GaussValue {
    ComplexInterval a;  // z1 ∂1F(z)
    ComplexInterval b;  // z2 ∂2F(z)
    /// Im(a conj b) encloses zero: [a : b] may lie in P¹(R).
    bool real = false;
    /// Realness decided exactly (Gaussian-rational input).
    bool exact = false;
};

inline GaussValue gauss_map(const LaurentPoly& f, const ComplexInterval& z1, const ComplexInterval& z2) {
    if (f.nvars() != 2) throw ArityError("gauss_map: F must be bivariate");
    if (z1.contains_zero() || z2.contains_zero()) throw AmoebaError("gauss_map: coordinate enclosure meets zero");
    const std::vector<ComplexInterval> z{z1, z2};
    GaussValue g{f.euler_derivative(0).evaluate(z), f.euler_derivative(1).evaluate(z)};
    if (g.a.contains_zero() && g.b.contains_zero()) throw SingularPointError("gauss_map: both coordinates enclose zero");
    const ComplexInterval cross = g.a * g.b.conj();
    g.real = cross.im.contains_zero();
    return g;
}

inline GaussValue gauss_map(const LaurentPoly& f, const GaussRational& z1, const GaussRational& z2,
                            mpfr_prec_t prec = 128) {
    const std::vector<GaussRational> z{z1, z2};
    const GaussRational a = evaluate_exact(f.euler_derivative(0), z), b = evaluate_exact(f.euler_derivative(1), z);
    if (a.is_zero() && b.is_zero()) throw SingularPointError("gauss_map: singular point");
    GaussValue g{a.enclose(prec), b.enclose(prec)};
    g.real = (a * b.conj()).is_real();
    g.exact = true;
    return g;
}

struct ContourSample {
    Chart chart = Chart::U;
    Rational u;
    RootBox z1;
    RootBox z2;
    Interval x1;
    Interval x2;
    /// The pencil member shares a curve with F at this parameter; the sample lies on that curve.
    bool degenerate_fiber = false;
};

struct TraceOptions {
    mpfr_prec_t precision_bits = 64;
    bool scaled = true;
    bool both_charts = true;
    /// Extra bisection levels between grid neighbours whose sample counts differ.
    int refine_levels = 2;
};

namespace detail {

inline Interval log_modulus(const RootBox& b) { return log(b.enclosure().abs()); }

inline bool pencil_vanishes(const LaurentPoly& P, const LaurentPoly& Q, const RootBox& b1, const RootBox& b2) {
    const std::vector<ComplexInterval> z{b1.enclosure(), b2.enclosure()};
    return P.evaluate(z).contains_zero() && Q.evaluate(z).contains_zero();
}

inline RootBox exact_box(const GaussRational& g, mpfr_prec_t prec) {
    return {Interval::from_rational(g.re, prec), Interval::from_rational(g.im, prec), 1, g};
}

/// Fixed values for one coordinate when sampling a common curve of P and Q.
inline std::vector<GaussRational> line_probe_values() {
    std::vector<GaussRational> out;
    const Rational radii[] = {Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2),
                              Rational(2), Rational(4), Rational(8)};
    const Rational phases[] = {Rational(0), Rational(1, 3), Rational(1), Rational(3)};
    for (const auto& r : radii)
        for (const auto& t : phases) {
            const auto w = unit_point(t);
            out.push_back({Rational(r * w.re), Rational(r * w.im)});
        }
    return out;
}

/// Samples of the curve shared by P and Q: fix one coordinate, take the gcd in the other.
inline std::vector<ContourSample> common_curve_samples(const Pencil& pq, Chart chart, const Rational& u, mpfr_prec_t prec) {
    std::vector<ContourSample> out;
    for (std::size_t fixed = 0; fixed < 2; ++fixed) {
        const std::size_t free = 1 - fixed;
        for (const auto& s : line_probe_values()) {
            std::vector<GaussRational> vals(2);
            vals[fixed] = s;
            auto g = gcd(specialize(pq.P, free, vals), specialize(pq.Q, free, vals));
            g.strip_zero_roots();
            if (g.degree() < 1) continue;
            for (const auto& box : isolate_roots(g, prec)) {
                ContourSample cs;
                cs.chart = chart;
                cs.u = u;
                RootBox fixed_box = exact_box(s, prec + 32);
                cs.z1 = fixed == 0 ? fixed_box : box;
                cs.z2 = fixed == 0 ? box : fixed_box;
                cs.x1 = log_modulus(cs.z1);
                cs.x2 = log_modulus(cs.z2);
                cs.degenerate_fiber = true;
                out.push_back(std::move(cs));
            }
        }
    }
    return out;
}

/// Rational u at which every coefficient of R(u, X) in X vanishes.
inline std::vector<Rational> degenerate_parameters(const LaurentPoly& r) {
    std::vector<UnivariatePoly> coeffs;
    for (const auto& c : coefficients_in(r, 1)) {
        if (c.is_zero()) continue;
        std::vector<GaussRational> v(static_cast<std::size_t>(c.max_exponent(0) + 1));
        for (const auto& [e, k] : c.terms()) v[static_cast<std::size_t>(e[0])] = GaussRational(k);
        coeffs.emplace_back(std::move(v));
    }
    if (coeffs.empty()) return {};
    UnivariatePoly g = coeffs.front();
    for (std::size_t i = 1; i < coeffs.size(); ++i) g = gcd(g, coeffs[i]);
    std::vector<Rational> out;
    if (g.degree() < 1) return out;
    // Rational roots only: an exact interval end or an exact simplest rational.
    const auto sf = squarefree_part(g);
    for (const auto& [a, b] : real_root_intervals(sf, Rational(1, 1 << 20))) {
        const Rational s = a == b ? a : simplest_rational(a, b);
        if (sf.evaluate(GaussRational(s)).is_zero()) out.push_back(s);
    }
    return out;
}

inline std::vector<ContourSample> samples_at(const ResultantPair& rp, const LaurentPoly& base, const Rational& u,
                                             mpfr_prec_t prec) {
    std::vector<ContourSample> out;
    const auto [a, b] = pencil_parts(base, rp.scaled);
    const BigInt num = u.get_num(), den = u.get_den();
    const Pencil pq{base, rp.chart == Chart::U ? a * den + b * num : a * num + b * den};
    if (pq.Q.is_zero()) return common_curve_samples({base, base}, rp.chart, u, prec);

    auto r1 = specialize(rp.R_X2, 1, {GaussRational(u), GaussRational(0)});
    auto r2 = specialize(rp.R_X1, 1, {GaussRational(u), GaussRational(0)});
    if (r1.is_zero() || r2.is_zero()) return common_curve_samples(pq, rp.chart, u, prec);
    r1.strip_zero_roots();
    r2.strip_zero_roots();
    if (r1.degree() < 1 || r2.degree() < 1) return out;
    const auto roots1 = isolate_roots(r1, prec), roots2 = isolate_roots(r2, prec);
    for (const auto& b1 : roots1)
        for (const auto& b2 : roots2) {
            if (!pencil_vanishes(pq.P, pq.Q, b1, b2)) continue;
            ContourSample cs;
            cs.chart = rp.chart;
            cs.u = u;
            cs.z1 = b1;
            cs.z2 = b2;
            cs.x1 = log_modulus(b1);
            cs.x2 = log_modulus(b2);
            out.push_back(std::move(cs));
        }
    return out;
}

}  // namespace detail

/// Uniform grid a + (b - a) l / (m - 1), l = 0..m-1.
inline std::vector<Rational> uniform_grid(const Rational& a, const Rational& b, int m) {
    if (m < 2) return {a};
    std::vector<Rational> out;
    for (int l = 0; l < m; ++l) out.push_back(Rational(a + (b - a) * l / (m - 1)));
    return out;
}

/// Sweeps the pencil parameter over the grid in each chart and keeps root pairs on which
/// P and Q both vanish. Parameters where the resultants degenerate are added exactly.
inline std::vector<ContourSample> trace_contour(const LaurentPoly& f, const std::vector<Rational>& grid,
                                                const TraceOptions& opt = {}) {
    if (f.nvars() != 2) throw ArityError("trace_contour: F must be bivariate");
    const auto base = f.normalized_shift();
    std::vector<ContourSample> out;
    std::vector<Chart> charts{Chart::U};
    if (opt.both_charts) charts.push_back(Chart::V);
    for (Chart chart : charts) {
        const auto rp = contour_resultants(base, chart, opt.scaled);
        std::map<Rational, std::vector<ContourSample>> by_u;
        for (const auto& u : grid) by_u.emplace(u, std::vector<ContourSample>{});
        for (const auto& u : detail::degenerate_parameters(rp.R_X2)) by_u.emplace(u, std::vector<ContourSample>{});
        for (const auto& u : detail::degenerate_parameters(rp.R_X1)) by_u.emplace(u, std::vector<ContourSample>{});
        for (auto& [u, s] : by_u) s = detail::samples_at(rp, base, u, opt.precision_bits);
        for (int level = 0; level < opt.refine_levels; ++level) {
            std::vector<Rational> mids;
            for (auto it = by_u.begin(), nx = it; it != by_u.end() && ++nx != by_u.end(); ++it)
                if (it->second.size() != nx->second.size()) mids.push_back((it->first + nx->first) / 2);
            if (mids.empty()) break;
            for (const auto& m : mids) by_u.emplace(m, detail::samples_at(rp, base, m, opt.precision_bits));
        }
        for (auto& [u, s] : by_u)
            for (auto& cs : s) out.push_back(std::move(cs));
    }
    return out;
}

struct OriginContourResult {
    enum class Status { Yes, No, Undetermined };
    Status status = Status::No;
    std::optional<RootBox> z1;
    std::optional<RootBox> z2;
    std::optional<GaussValue> gauss;
    /// Witness verified by exact arithmetic (otherwise by enclosures at the precision cap).
    bool exact = false;
    std::string detail;
};

namespace detail {

/// Im(A(z) conj B(z)) on the torus, as the Laurent polynomial A(X)B(1/X) - A(1/X)B(X).
inline LaurentPoly gauss_realness_poly(const LaurentPoly& f) {
    const auto a = f.euler_derivative(0), b = f.euler_derivative(1);
    return a * b.inverted() - a.inverted() * b;
}

inline UnivariatePoly to_univariate(const LaurentPoly& r) {
    if (r.nvars() != 1) throw ArityError("to_univariate: expected one variable");
    return UnivariatePoly::from_laurent(r);
}

/// Exact search on a mesh of rational unit points z1 for a circle root of gcd(F(z1,.), W(z1,.)).
inline OriginContourResult origin_contour_mesh(const LaurentPoly& f, const LaurentPoly& w, int mesh) {
    OriginContourResult out;
    out.status = OriginContourResult::Status::Undetermined;
    for (int k = -mesh; k <= mesh; ++k) {
        const GaussRational z1 = k == mesh ? GaussRational(-1) : unit_point(Rational(k, mesh / 4 + 1));
        const std::vector<GaussRational> vals{z1, GaussRational(0)};
        auto g = gcd(specialize(f, 1, vals), specialize(w, 1, vals));
        g.strip_zero_roots();
        if (g.degree() < 1) continue;
        const auto roots = roots_on_unit_circle(g, 128);
        if (roots.empty()) continue;
        out.status = OriginContourResult::Status::Yes;
        out.z1 = exact_box(z1, 128);
        out.z2 = roots.front();
        out.exact = roots.front().exact.has_value();
        out.detail = "common curve of F and the realness polynomial meets the torus";
        return out;
    }
    out.detail = "F shares a curve with the realness polynomial; no torus point found on the mesh";
    return out;
}

}  // namespace detail

/// Decides whether 0 ∈ contour(A_F): is there z ∈ T² with F(z) = 0 and [z1∂1F : z2∂2F] real?
/// Candidates are unit-circle roots of Res(F, W) in each coordinate, W the realness polynomial;
/// a negative answer is exact, a positive one carries the witness and its Gauss value.
inline OriginContourResult origin_in_contour(const LaurentPoly& f, mpfr_prec_t precision_cap = 1024) {
    if (f.nvars() != 2) throw ArityError("origin_in_contour: F must be bivariate");
    const auto base = f.normalized_shift();
    OriginContourResult out;
    const auto w_laurent = detail::gauss_realness_poly(base);
    if (w_laurent.is_zero()) return detail::origin_contour_mesh(base, base, 64);
    const auto w = w_laurent.normalized_shift();
    const auto r1 = resultant(base, w, 1), r2 = resultant(base, w, 0);
    if (r1.is_zero() || r2.is_zero()) return detail::origin_contour_mesh(base, w, 64);
    const auto u1 = detail::to_univariate(r1), u2 = detail::to_univariate(r2);

    for (mpfr_prec_t prec = 64; prec <= precision_cap; prec *= 2) {
        const auto c1 = roots_on_unit_circle(u1, prec), c2 = roots_on_unit_circle(u2, prec);
        if (c1.empty() || c2.empty()) {
            out.status = OriginContourResult::Status::No;
            out.exact = true;
            out.detail = "a resultant of F and the realness polynomial has no unit-circle root";
            return out;
        }
        bool candidate = false;
        for (const auto& b1 : c1)
            for (const auto& b2 : c2) {
                if (b1.exact && b2.exact) {
                    const std::vector<GaussRational> z{*b1.exact, *b2.exact};
                    if (evaluate_exact(base, z).is_zero() && evaluate_exact(w, z).is_zero()) {
                        out.status = OriginContourResult::Status::Yes;
                        out.z1 = b1;
                        out.z2 = b2;
                        out.exact = true;
                        try {
                            out.gauss = gauss_map(base, *b1.exact, *b2.exact);
                        } catch (const SingularPointError&) {
                            out.detail = "singular point of F on the torus";
                        }
                        if (out.detail.empty()) out.detail = "exact torus zero with real Gauss value";
                        return out;
                    }
                    continue;
                }
                if (!detail::pencil_vanishes(base, w, b1, b2)) continue;
                candidate = true;
                if (prec * 2 > precision_cap) {
                    out.status = OriginContourResult::Status::Yes;
                    out.z1 = b1;
                    out.z2 = b2;
                    try {
                        out.gauss = gauss_map(base, b1.enclosure(), b2.enclosure());
                    } catch (const SingularPointError&) {
                        out.detail = "singular point candidate on the torus";
                    }
                    if (out.detail.empty()) out.detail = "torus zero with real Gauss value, verified by enclosures";
                    return out;
                }
            }
        if (!candidate) {
            out.status = OriginContourResult::Status::No;
            out.exact = true;
            out.detail = "no candidate pair of circle roots is a common zero";
            return out;
        }
    }
    out.status = OriginContourResult::Status::Undetermined;
    return out;
}

}  // namespace amoeba
