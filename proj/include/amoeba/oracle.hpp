#pragma once

// Independent ground truth: fiber membership in A_F, the exact 1-D amoeba, the exact 2-D
// bidisk criterion and a (non-certified) polydisk sampling check.

#include "amoeba/resultant.hpp"
#include "amoeba/univariate.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

namespace amoeba {

struct MembershipResult {
    enum class Status { Member, NonMember, Undetermined };
    Status status = Status::Undetermined;
    /// Member: a point of the fiber near a zero of F.
    std::vector<std::complex<double>> z;
    /// Member: upper bound on |F(z)|; zero for exact witnesses.
    double residual = 0;
    /// Member: witness is an exact zero (Gaussian-rational coordinates).
    bool exact = false;
    /// NonMember: certified lower bound for |F| on the whole fiber.
    double bound = 0;
    std::string detail;
};

inline const char* status_name(MembershipResult::Status s) {
    switch (s) {
        case MembershipResult::Status::Member: return "member";
        case MembershipResult::Status::NonMember: return "non-member";
        default: return "undetermined";
    }
}

struct Amoeba1dPoint {
    Interval log_modulus;
    int multiplicity = 1;
};

/// Log-moduli of the roots of a univariate F, sorted; roots whose moduli cannot be separated
/// at 256 bits (conjugate pairs, equal moduli) are merged with summed multiplicity.
inline std::vector<Amoeba1dPoint> amoeba_1d(const LaurentPoly& f) {
    if (f.nvars() != 1) throw ArityError("amoeba_1d: F must be univariate");
    if (f.is_zero()) throw AmoebaError("amoeba_1d: zero polynomial");
    auto p = UnivariatePoly::from_laurent(f.normalized_shift());
    std::vector<Amoeba1dPoint> out;
    if (p.degree() < 1) return out;
    for (const auto& b : isolate_roots(p, 256)) out.push_back({log(b.enclosure().abs()), b.multiplicity});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.log_modulus.mid() < b.log_modulus.mid(); });
    std::vector<Amoeba1dPoint> merged;
    for (auto& q : out) {
        if (!merged.empty() && merged.back().log_modulus.intersects(q.log_modulus)) {
            merged.back().log_modulus = Interval::hull(merged.back().log_modulus, q.log_modulus);
            merged.back().multiplicity += q.multiplicity;
        } else {
            merged.push_back(std::move(q));
        }
    }
    return merged;
}

namespace detail {

inline bool is_origin(const RationalPoint& x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& q) { return sgn(q) == 0; });
}

inline MembershipResult fiber_1d(const LaurentPoly& f, const Rational& x) {
    MembershipResult out;
    const auto p = UnivariatePoly::from_laurent(f.normalized_shift());
    if (p.degree() < 1) {
        out.status = MembershipResult::Status::NonMember;
        out.bound = std::abs(p.lead().re.get_d());
        out.detail = "F is a nonzero monomial";
        return out;
    }
    if (sgn(x) == 0) {
        const auto c = roots_on_unit_circle(p, 64);
        if (!c.empty()) {
            out.status = MembershipResult::Status::Member;
            out.z = {c.front().mid()};
            out.exact = c.front().exact.has_value();
            out.residual = out.exact ? 0 : std::abs(std::complex<double>(p.evaluate(c.front().enclosure()).mid()));
            out.detail = "root on the unit circle";
            return out;
        }
    }
    // For x != 0 equality |a| = e^x is impossible for algebraic a; refine until separated.
    for (mpfr_prec_t prec = 64; prec <= 4096; prec *= 2) {
        const Interval ex = Interval::from_rational(x, prec + 32);
        bool separated = true;
        double gap = INFINITY;
        for (const auto& b : isolate_roots(p, prec)) {
            const Interval d = log(b.enclosure().abs()) - ex;
            if (d.contains_zero()) {
                separated = false;
                break;
            }
            gap = std::min(gap, std::min(std::abs(d.lower_double()), std::abs(d.upper_double())));
        }
        if (separated) {
            out.status = MembershipResult::Status::NonMember;
            out.bound = gap;
            out.detail = "every root modulus is separated from e^x; bound is the log-modulus gap";
            return out;
        }
    }
    out.detail = "root modulus not separated from e^x at the precision cap";
    return out;
}

/// Scaled terms of F on the fiber over x: F(e^{x+iθ}) = e^{shift} Σ w_t e^{i<e_t,θ>}.
struct FiberTerms {
    std::vector<Exponent> exps;
    std::vector<double> w;
    double shift = 0;
};

inline FiberTerms fiber_terms(const LaurentPoly& f, const RationalPoint& x) {
    FiberTerms ft;
    std::vector<double> logs;
    for (const auto& [e, c] : f.terms()) {
        double s = std::log(std::abs(c.get_d()));
        for (std::size_t j = 0; j < e.size(); ++j) s += static_cast<double>(e[j]) * x[j].get_d();
        logs.push_back(s);
        ft.exps.push_back(e);
    }
    ft.shift = *std::max_element(logs.begin(), logs.end());
    std::size_t i = 0;
    for (const auto& [e, c] : f.terms()) ft.w.push_back((sgn(c) < 0 ? -1.0 : 1.0) * std::exp(logs[i++] - ft.shift));
    return ft;
}

/// min |F| over an r^n torus mesh plus the Lipschitz slack: a positive result bounds |F| on the fiber.
inline std::optional<double> fiber_mesh_bound(const LaurentPoly& f, const RationalPoint& x, int r, double* mesh_min) {
    const auto ft = fiber_terms(f, x);
    const std::size_t n = f.nvars();
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(r));
    for (int m = 0; m < r; ++m) roots[static_cast<std::size_t>(m)] = std::polar(1.0, 2 * std::numbers::pi * m / r);
    double lipschitz = 0, mass = 0;
    for (std::size_t t = 0; t < ft.w.size(); ++t) {
        double l1 = 0;
        for (auto e : ft.exps[t]) l1 += static_cast<double>(std::abs(e));
        lipschitz += std::abs(ft.w[t]) * l1;
        mass += std::abs(ft.w[t]);
    }
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= static_cast<std::size_t>(r);
    std::vector<int> m(n, 0);
    double best = INFINITY;
    for (std::size_t node = 0; node < total; ++node) {
        std::complex<double> v = 0;
        for (std::size_t t = 0; t < ft.w.size(); ++t) {
            long long idx = 0;
            for (std::size_t j = 0; j < n; ++j) idx += static_cast<long long>(ft.exps[t][j]) * m[j];
            idx %= r;
            if (idx < 0) idx += r;
            v += ft.w[t] * roots[static_cast<std::size_t>(idx)];
        }
        best = std::min(best, std::abs(v));
        for (std::size_t j = n; j-- > 0;) {
            if (++m[j] < r) break;
            m[j] = 0;
        }
    }
    // Every torus point is within π/r of a node in each angle; rounding is bounded by a multiple of the mass.
    const double slack = lipschitz * std::numbers::pi / r + 1e-12 * mass * static_cast<double>(ft.w.size());
    *mesh_min = best * std::exp(ft.shift);
    if (best > slack) return (best - slack) * std::exp(ft.shift);
    return std::nullopt;
}

/// Sweep nodes around the circle: -1 followed by unit_point(t) for t = tan(θ/2) on a uniform θ grid.
inline std::vector<GaussRational> sweep_nodes(int count) {
    std::vector<GaussRational> out{GaussRational(-1)};
    const BigInt denom = BigInt(1) << 24;
    for (int l = 1; l < count; ++l) {
        const double theta = -std::numbers::pi + 2 * std::numbers::pi * l / count;
        const double t = std::tan(theta / 2);
        out.push_back(unit_point(Rational(BigInt(static_cast<long>(std::llround(t * denom.get_d()))), denom)));
    }
    return out;
}

/// Roots of W ↦ F(e^{x1} ω, e^{x2} W) inside the unit disk, or nothing when not certified.
struct SliceCount {
    std::optional<int> inside;
    std::vector<RootDisk> disks;
};

inline SliceCount slice_count(const LaurentPoly& f, const GaussRational& omega, const Interval& e1, const Interval& e2,
                              mpfr_prec_t prec) {
    SliceCount out;
    const std::int64_t lo = f.min_exponent(1), hi = f.max_exponent(1);
    std::vector<ComplexInterval> c(static_cast<std::size_t>(hi - lo + 1),
                                   ComplexInterval(Interval::from_int(0, prec), Interval::from_int(0, prec)));
    const ComplexInterval w = omega.enclose(prec) * e1;
    for (const auto& [e, v] : f.terms()) {
        ComplexInterval t = pow(w, e[0]) * (pow(ComplexInterval(e2, Interval::from_int(0, prec)), e[1]).re * Interval::from_int(v, prec));
        c[static_cast<std::size_t>(e[1] - lo)] += t;
    }
    if (c.front().contains_zero()) return out;
    const auto disks = enclose_roots(c, prec);
    if (!disks) return out;
    const Interval one = Interval::from_int(1, prec);
    int inside = 0;
    for (const auto& d : *disks) {
        const Interval m = d.center.abs();
        if ((m + d.radius).certainly_less(one))
            ++inside;
        else if (!one.certainly_less(m - d.radius))
            return out;
    }
    out.inside = inside;
    out.disks = *disks;
    return out;
}

inline std::optional<int> certified_count(const LaurentPoly& f, const GaussRational& omega, const RationalPoint& x,
                                          SliceCount* keep = nullptr) {
    for (mpfr_prec_t prec : {128, 512}) {
        const Interval e1 = exp(Interval::from_rational(x[0], prec)), e2 = exp(Interval::from_rational(x[1], prec));
        auto s = slice_count(f, omega, e1, e2, prec);
        if (s.inside) {
            const int inside = *s.inside;
            if (keep) *keep = std::move(s);
            return inside;
        }
    }
    return std::nullopt;
}

inline MembershipResult fiber_2d_sweep(const LaurentPoly& f, const RationalPoint& x, int resolution) {
    MembershipResult out;
    const auto nodes = sweep_nodes(std::max(8, resolution));
    std::vector<std::optional<int>> counts;
    for (const auto& w : nodes) counts.push_back(certified_count(f, w, x));
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        if (!counts[i] || !counts[j] || *counts[i] == *counts[j]) continue;
        // Bisect the phase bracket in t = tan(θ/2); brackets touching -1 stay unrefined.
        GaussRational a = nodes[i], b = nodes[j];
        const int ca = *counts[i];
        SliceCount last;
        if (i > 0 && i + 1 < n) {
            Rational ta = Rational(a.im / (a.re + 1));
            Rational tb = Rational(b.im / (b.re + 1));
            for (int step = 0; step < 30; ++step) {
                const Rational tm = (ta + tb) / 2;
                const auto wm = unit_point(tm);
                SliceCount s;
                const auto cm = certified_count(f, wm, x, &s);
                if (!cm) break;
                if (*cm == ca) {
                    ta = tm;
                    a = wm;
                } else {
                    tb = tm;
                    b = wm;
                    last = std::move(s);
                }
            }
        }
        if (last.disks.empty()) certified_count(f, b, x, &last);
        // The witness pairs the phase with the slice root nearest the unit circle.
        const double r1 = std::exp(x[0].get_d()), r2 = std::exp(x[1].get_d());
        std::complex<double> w1(b.to_complex()), w2 = 0;
        double dist = INFINITY;
        for (const auto& d : last.disks) {
            const std::complex<double> c = d.center.mid();
            if (std::abs(std::abs(c) - 1) < dist) {
                dist = std::abs(std::abs(c) - 1);
                w2 = c / std::abs(c);
            }
        }
        out.status = MembershipResult::Status::Member;
        out.z = {r1 * w1, r2 * w2};
        out.residual = std::abs(f.evaluate(std::span<const std::complex<double>>(out.z)));
        out.detail = "certified change of the slice root count inside |W| = 1 between neighbouring phases";
        return out;
    }
    return out;
}

inline MembershipResult fiber_2d_exact(const LaurentPoly& f) {
    MembershipResult out;
    std::vector<GaussRational> nodes{GaussRational(-1)};
    for (const Rational& t : {Rational(0), Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(2),
                              Rational(-2), Rational(1, 3), Rational(-1, 3), Rational(3), Rational(-3)})
        nodes.push_back(unit_point(t));
    for (const auto& w : nodes) {
        const auto p = specialize(f, 1, {w, GaussRational(0)});
        if (p.is_zero()) {
            out.status = MembershipResult::Status::Member;
            out.z = {std::complex<double>(w.to_complex()), 1.0};
            out.exact = true;
            out.detail = "F vanishes on the whole circle slice";
            return out;
        }
        if (p.degree() < 1) continue;
        const auto c = roots_on_unit_circle(p, 64);
        if (c.empty()) continue;
        out.status = MembershipResult::Status::Member;
        out.z = {std::complex<double>(w.to_complex()), c.front().mid()};
        out.exact = c.front().exact.has_value();
        out.residual = out.exact ? 0 : std::abs(f.evaluate(std::span<const std::complex<double>>(out.z)));
        out.detail = "exact unit-circle root of a rational-phase slice";
        return out;
    }
    return out;
}

}  // namespace detail

/// Is x ∈ A_F = Log(V(F))? Member only on an exact hit or a certified root-count change;
/// NonMember only with a positive mesh bound that survives the Lipschitz slack.
inline MembershipResult amoeba_membership_fiber(const LaurentPoly& f, const RationalPoint& x, int resolution = 256) {
    if (x.size() != f.nvars()) throw ArityError("amoeba_membership_fiber: point dimension mismatch");
    if (f.is_zero()) throw AmoebaError("amoeba_membership_fiber: zero polynomial");
    const auto g = f.normalized_shift();
    const std::size_t n = g.nvars();
    if (n == 1) return detail::fiber_1d(g, x[0]);
    if (g.size() == 1) {
        MembershipResult out;
        out.status = MembershipResult::Status::NonMember;
        out.bound = std::exp(detail::fiber_terms(g, x).shift);
        out.detail = "F is a monomial";
        return out;
    }
    if (n == 2) {
        // A variable that does not occur reduces the question to one dimension.
        for (std::size_t j = 0; j < 2; ++j)
            if (g.max_exponent(j) == 0) {
                LaurentPoly h(1);
                for (const auto& [e, c] : g.terms()) h.add_term({e[1 - j]}, c);
                auto out = detail::fiber_1d(h, x[1 - j]);
                if (out.status == MembershipResult::Status::Member) {
                    std::vector<std::complex<double>> z(2, std::exp(x[j].get_d()));
                    z[1 - j] = out.z.front();
                    out.z = z;
                }
                return out;
            }
        if (detail::is_origin(x)) {
            auto out = detail::fiber_2d_exact(g);
            if (out.status == MembershipResult::Status::Member) return out;
        }
        auto out = detail::fiber_2d_sweep(g, x, resolution);
        if (out.status == MembershipResult::Status::Member) return out;
    }
    int r = resolution;
    while (std::pow(static_cast<double>(r), static_cast<double>(n)) > 4e6 && r > 8) r /= 2;
    double mesh_min = 0;
    MembershipResult out;
    if (const auto bound = detail::fiber_mesh_bound(g, x, r, &mesh_min)) {
        out.status = MembershipResult::Status::NonMember;
        out.bound = *bound;
        out.detail = "mesh minimum of |F| exceeds the Lipschitz slack";
    } else {
        out.detail = n == 2 ? "no certified crossing and the mesh minimum is within the Lipschitz slack"
                            : "sampling only for three or more variables; mesh minimum within the slack";
    }
    return out;
}

/// Exact test that F has no zero on the closed unit bidisk: F(z1, 0) and F(1, z2) are Schur stable
/// and Res_{X2}(F, F*) has no root on the unit circle.
inline bool shanks_oracle_2d(const LaurentPoly& f) {
    if (f.nvars() != 2) throw ArityError("shanks_oracle_2d: F must be bivariate");
    if (f.is_zero()) throw AmoebaError("shanks_oracle_2d: zero polynomial");
    if (!f.is_polynomial()) throw AmoebaError("shanks_oracle_2d: support must lie in N^2");
    if (f.min_exponent(0) > 0 || f.min_exponent(1) > 0) throw AmoebaError("shanks_oracle_2d: F divisible by a variable");
    const auto first = specialize(f, 0, {GaussRational(0), GaussRational(0)});
    const auto second = specialize(f, 1, {GaussRational(1), GaussRational(0)});
    if (!schur_cohn_stable_disk(first) || !schur_cohn_stable_disk(second)) return false;
    const std::int64_t d1 = f.max_exponent(0), d2 = f.max_exponent(1);
    // Constant in one variable: the slice conditions already decide.
    if (d1 == 0 || d2 == 0) return true;
    const auto r = resultant(f, conjugate_reciprocal(f, {d1, d2}), 1);
    if (r.is_zero()) return false;
    const auto u = UnivariatePoly::from_laurent(r);
    if (u.degree() < 1) return true;
    return roots_on_unit_circle(u, 64).empty();
}

struct PolydiskSample {
    bool zero_found = false;
    std::vector<std::complex<double>> witness;
    double min_abs = 0;
    /// Always true: the mesh does not prove anything.
    bool heuristic = true;
};

/// Samples the closed polydisk: a radius-angle mesh in the first n-1 coordinates, exact-degree
/// root finding in the last one. Not a proof in either direction.
inline PolydiskSample polydisk_nonvanishing_sample(const LaurentPoly& f, int grid) {
    if (f.is_zero()) throw AmoebaError("polydisk_nonvanishing_sample: zero polynomial");
    if (!f.is_polynomial()) throw AmoebaError("polydisk_nonvanishing_sample: support must lie in N^n");
    if (grid < 2) throw AmoebaError("polydisk_nonvanishing_sample: grid must be at least 2");
    const std::size_t n = f.nvars();
    PolydiskSample out;
    out.min_abs = INFINITY;
    const int radii = std::max(2, grid / 4);
    std::vector<std::complex<double>> mesh;
    for (int a = 0; a < grid; ++a)
        for (int r = 1; r <= radii; ++r) mesh.push_back(std::polar(static_cast<double>(r) / radii, 2 * std::numbers::pi * a / grid));
    mesh.emplace_back(0.0, 0.0);
    std::size_t total = 1;
    for (std::size_t j = 0; j + 1 < n; ++j) total *= mesh.size();
    if (total > (1u << 22)) throw ResourceError("polydisk_nonvanishing_sample: mesh too large", 0);
    const std::int64_t deg = f.max_exponent(n - 1);
    std::vector<std::size_t> idx(n > 0 ? n - 1 : 0, 0);
    // Among zeros found, prefer the one closest to the distinguished boundary.
    double best_score = -1;
    std::vector<std::complex<double>> z(n);
    for (std::size_t node = 0; node < total; ++node) {
        for (std::size_t j = 0; j + 1 < n; ++j) z[j] = mesh[idx[j]];
        // Coefficients of the last variable at this node.
        std::vector<std::complex<long double>> c(static_cast<std::size_t>(deg + 1), 0);
        for (const auto& [e, v] : f.terms()) {
            std::complex<double> t = v.get_d();
            for (std::size_t j = 0; j + 1 < n; ++j) t *= std::pow(z[j], static_cast<int>(e[j]));
            c[static_cast<std::size_t>(e[n - 1])] += std::complex<long double>(t);
        }
        for (const auto& w : mesh) {
            std::complex<long double> acc = 0;
            for (std::size_t k = c.size(); k-- > 0;) acc = acc * std::complex<long double>(w) + c[k];
            out.min_abs = std::min(out.min_abs, static_cast<double>(std::abs(acc)));
        }
        while (c.size() > 1 && std::abs(c.back()) < 1e-300L) c.pop_back();
        if (c.size() > 1) {
            for (const auto& root : detail::aberth(c)) {
                const double m = static_cast<double>(std::abs(root));
                double score = m;
                for (std::size_t j = 0; j + 1 < n; ++j) score = std::min(score, std::abs(z[j]));
                if (m <= 1 + 1e-12 && score > best_score) {
                    best_score = score;
                    out.zero_found = true;
                    out.witness = z;
                    out.witness[n - 1] = std::complex<double>(root);
                }
            }
        }
        for (std::size_t j = idx.size(); j-- > 0;) {
            if (++idx[j] < mesh.size()) break;
            idx[j] = 0;
        }
    }
    if (out.zero_found) out.min_abs = 0;
    return out;
}

}  // namespace amoeba
