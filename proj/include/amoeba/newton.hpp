#pragma once

// Newton polytopes of Laurent polynomials with exact integer predicates.

#include "amoeba/laurent.hpp"
#include "amoeba/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace amoeba {

using IntVector = std::vector<BigInt>;

/// Half-space <normal, x> <= offset.
struct Facet {
    IntVector normal;
    BigInt offset;

    BigInt slack(const Exponent& p) const {
        BigInt s = offset;
        for (std::size_t j = 0; j < normal.size(); ++j) s -= normal[j] * BigInt(static_cast<long>(p[j]));
        return s;
    }
    bool operator<(const Facet& o) const {
        return std::tie(normal, offset) < std::tie(o.normal, o.offset);
    }
    bool operator==(const Facet& o) const = default;
};

class NewtonPolytope {
public:
    std::size_t ambient_dim = 0;
    std::size_t dim = 0;
    std::vector<Exponent> vertices;
    /// Inequalities describing the polytope in R^n; the affine hull of a
    /// lower-dimensional polytope contributes a pair of opposite inequalities
    /// per independent equation.
    std::vector<Facet> facets;

    bool contains(const Exponent& p) const {
        return std::all_of(facets.begin(), facets.end(), [&](const Facet& f) { return sgn(f.slack(p)) >= 0; });
    }
    bool is_vertex(const Exponent& p) const {
        return std::find(vertices.begin(), vertices.end(), p) != vertices.end();
    }

    /// Coordinate bounding box over the vertices.
    std::pair<Exponent, Exponent> bounding_box() const {
        Exponent lo(ambient_dim, std::numeric_limits<std::int64_t>::max());
        Exponent hi(ambient_dim, std::numeric_limits<std::int64_t>::min());
        for (const auto& v : vertices)
            for (std::size_t j = 0; j < ambient_dim; ++j) {
                lo[j] = std::min(lo[j], v[j]);
                hi[j] = std::max(hi[j], v[j]);
            }
        return {lo, hi};
    }

    /// Number of lattice points of t·Δ.
    BigInt count_dilate(std::int64_t t) const {
        auto [lo, hi] = bounding_box();
        BigInt count = 0;
        Exponent p(ambient_dim);
        for (std::size_t j = 0; j < ambient_dim; ++j) p[j] = t * lo[j];
        const BigInt bt = static_cast<long>(t);
        while (true) {
            bool inside = true;
            for (const auto& f : facets) {
                BigInt s = f.offset * bt;
                for (std::size_t j = 0; j < ambient_dim; ++j) s -= f.normal[j] * BigInt(static_cast<long>(p[j]));
                if (sgn(s) < 0) {
                    inside = false;
                    break;
                }
            }
            if (inside) ++count;
            std::size_t j = ambient_dim;
            while (j-- > 0) {
                if (++p[j] <= t * hi[j]) break;
                p[j] = t * lo[j];
            }
            if (j == static_cast<std::size_t>(-1)) break;
        }
        return count;
    }

    /// All points of Δ ∩ Z^n in lexicographic order.
    std::vector<Exponent> lattice_points() const {
        auto [lo, hi] = bounding_box();
        std::vector<Exponent> out;
        Exponent p = lo;
        while (true) {
            if (contains(p)) out.push_back(p);
            std::size_t j = ambient_dim;
            while (j-- > 0) {
                if (++p[j] <= hi[j]) break;
                p[j] = lo[j];
            }
            if (j == static_cast<std::size_t>(-1)) break;
        }
        return out;
    }

    /// Dimension of the smallest face containing p (p must lie in Δ).
    std::size_t minimal_face_dim(const Exponent& p) const;
};

namespace detail {

inline BigInt dot(const IntVector& a, const Exponent& p) {
    BigInt s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * BigInt(static_cast<long>(p[j]));
    return s;
}

inline void primitive(IntVector& v) {
    BigInt g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

/// Affine dimension of a point set.
inline std::size_t affine_dim(const std::vector<Exponent>& pts) {
    if (pts.size() <= 1) return 0;
    RatMatrix m;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rational> r;
        for (std::size_t j = 0; j < pts[i].size(); ++j) r.emplace_back(BigInt(static_cast<long>(pts[i][j] - pts[0][j])));
        m.push_back(std::move(r));
    }
    return rank(std::move(m));
}

/// Facets of the hull of full-dimensional points in Z^d (d >= 1), as primitive normals.
inline std::vector<Facet> full_dim_facets(const std::vector<Exponent>& pts, std::size_t d) {
    std::set<Facet> out;
    auto try_normal = [&](IntVector normal) {
        primitive(normal);
        if (std::all_of(normal.begin(), normal.end(), [](const BigInt& x) { return sgn(x) == 0; })) return;
        BigInt mx = dot(normal, pts[0]), mn = mx;
        for (const auto& p : pts) {
            const BigInt v = dot(normal, p);
            if (v > mx) mx = v;
            if (v < mn) mn = v;
        }
        out.insert(Facet{normal, mx});
        IntVector neg = normal;
        for (auto& x : neg) x = -x;
        out.insert(Facet{neg, -mn});
    };
    if (d == 1) {
        try_normal(IntVector{1});
    } else if (d == 2) {
        // Monotone chain; every hull edge yields its outward normal.
        std::vector<Exponent> s = pts;
        std::sort(s.begin(), s.end());
        auto cross = [](const Exponent& o, const Exponent& a, const Exponent& b) -> BigInt {
            return BigInt(static_cast<long>(a[0] - o[0])) * BigInt(static_cast<long>(b[1] - o[1])) -
                   BigInt(static_cast<long>(a[1] - o[1])) * BigInt(static_cast<long>(b[0] - o[0]));
        };
        std::vector<Exponent> hull;
        for (int pass = 0; pass < 2; ++pass) {
            const std::size_t base = hull.size();
            for (const auto& p : s) {
                while (hull.size() >= base + 2 && sgn(cross(hull[hull.size() - 2], hull.back(), p)) <= 0)
                    hull.pop_back();
                hull.push_back(p);
            }
            hull.pop_back();
            std::reverse(s.begin(), s.end());
        }
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const auto& a = hull[i];
            const auto& b = hull[(i + 1) % hull.size()];
            try_normal(IntVector{BigInt(static_cast<long>(b[1] - a[1])), BigInt(static_cast<long>(a[0] - b[0]))});
        }
    } else {
        // Enumerate hyperplanes through d affinely independent points.
        const std::size_t m = pts.size();
        std::vector<std::size_t> idx(d);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            IntMatrix diff;
            for (std::size_t i = 1; i < d; ++i) {
                std::vector<BigInt> r;
                for (std::size_t j = 0; j < d; ++j) r.emplace_back(static_cast<long>(pts[idx[i]][j] - pts[idx[0]][j]));
                diff.push_back(std::move(r));
            }
            IntVector normal(d);
            for (std::size_t c = 0; c < d; ++c) {
                IntMatrix minor;
                for (const auto& row : diff) {
                    std::vector<BigInt> r;
                    for (std::size_t j = 0; j < d; ++j)
                        if (j != c) r.push_back(row[j]);
                    minor.push_back(std::move(r));
                }
                normal[c] = bareiss_determinant(minor);
                if (c % 2 == 1) normal[c] = -normal[c];
            }
            bool nonzero = std::any_of(normal.begin(), normal.end(), [](const BigInt& x) { return sgn(x) != 0; });
            if (nonzero) {
                const BigInt ref = dot(normal, pts[idx[0]]);
                bool le = true, ge = true;
                for (const auto& p : pts) {
                    const int c = cmp(dot(normal, p), ref);
                    if (c > 0) le = false;
                    if (c < 0) ge = false;
                }
                if (le) {
                    primitive(normal);
                    out.insert(Facet{normal, dot(normal, pts[idx[0]])});
                } else if (ge) {
                    for (auto& x : normal) x = -x;
                    primitive(normal);
                    out.insert(Facet{normal, dot(normal, pts[idx[0]])});
                }
            }
            std::size_t i = d;
            while (i-- > 0) {
                if (idx[i] < m - d + i) break;
            }
            if (i == static_cast<std::size_t>(-1)) break;
            ++idx[i];
            for (std::size_t k = i + 1; k < d; ++k) idx[k] = idx[k - 1] + 1;
        }
        // Keep only supporting hyperplanes that touch d affinely independent points.
        std::set<Facet> real;
        for (const auto& f : out) {
            std::vector<Exponent> tight;
            for (const auto& p : pts)
                if (sgn(f.slack(p)) == 0) tight.push_back(p);
            if (affine_dim(tight) + 1 == d) real.insert(f);
        }
        out = std::move(real);
    }
    if (d <= 2) {
        // Drop supporting lines that only touch a vertex.
        std::set<Facet> real;
        for (const auto& f : out) {
            std::vector<Exponent> tight;
            for (const auto& p : pts)
                if (sgn(f.slack(p)) == 0) tight.push_back(p);
            if (affine_dim(tight) + 1 == d) real.insert(f);
        }
        out = std::move(real);
    }
    return {out.begin(), out.end()};
}

/// Facets of a full-dimensional point set. Large sets in d >= 3 are handled by growing a
/// subset from extreme points and adding, per violated facet, the point farthest beyond it.
inline std::vector<Facet> hull_facets(const std::vector<Exponent>& pts, std::size_t d) {
    if (d <= 2 || pts.size() <= 2 * d + 8) return full_dim_facets(pts, d);
    std::set<Exponent> subset;
    std::vector<int> dir(d, -1);
    while (true) {
        if (std::any_of(dir.begin(), dir.end(), [](int v) { return v != 0; })) {
            const Exponent* best = nullptr;
            std::int64_t best_v = 0;
            for (const auto& p : pts) {
                std::int64_t v = 0;
                for (std::size_t j = 0; j < d; ++j) v += dir[j] * p[j];
                if (!best || v > best_v) {
                    best = &p;
                    best_v = v;
                }
            }
            subset.insert(*best);
        }
        std::size_t j = d;
        while (j-- > 0) {
            if (++dir[j] <= 1) break;
            dir[j] = -1;
        }
        if (j == static_cast<std::size_t>(-1)) break;
    }
    std::vector<Exponent> cur(subset.begin(), subset.end());
    for (const auto& p : pts) {
        if (affine_dim(cur) == d) break;
        std::vector<Exponent> trial = cur;
        trial.push_back(p);
        if (affine_dim(trial) > affine_dim(cur)) cur = std::move(trial);
    }
    while (true) {
        auto facets = full_dim_facets(cur, d);
        std::set<Exponent> extra;
        for (const auto& f : facets) {
            const Exponent* worst = nullptr;
            BigInt worst_slack = 0;
            for (const auto& p : pts) {
                const BigInt sl = f.slack(p);
                if (sgn(sl) < 0 && (!worst || sl < worst_slack)) {
                    worst = &p;
                    worst_slack = sl;
                }
            }
            if (worst) extra.insert(*worst);
        }
        if (extra.empty()) return facets;
        cur.insert(cur.end(), extra.begin(), extra.end());
    }
}

}  // namespace detail

/// Newton polytope Δ(F), the convex hull of Supp F.
inline NewtonPolytope newton_polytope_of_points(std::vector<Exponent> pts, std::size_t n) {
    if (pts.empty()) throw AmoebaError("Newton polytope of the zero polynomial is undefined");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    NewtonPolytope poly;
    poly.ambient_dim = n;

    IntMatrix diffs;
    RatMatrix rdiffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<BigInt> r;
        std::vector<Rational> q;
        for (std::size_t j = 0; j < n; ++j) {
            r.emplace_back(static_cast<long>(pts[i][j] - pts[0][j]));
            q.emplace_back(r.back());
        }
        diffs.push_back(std::move(r));
        rdiffs.push_back(std::move(q));
    }
    std::vector<std::size_t> pivots = rdiffs.empty() ? std::vector<std::size_t>{} : row_reduce(rdiffs);
    poly.dim = pivots.size();

    // Equations of the affine hull.
    for (auto& eq : integer_nullspace(diffs, n)) {
        const BigInt off = detail::dot(eq, pts[0]);
        IntVector neg = eq;
        for (auto& x : neg) x = -x;
        poly.facets.push_back(Facet{eq, off});
        poly.facets.push_back(Facet{neg, -off});
    }
    if (poly.dim == 0) {
        poly.vertices = {pts[0]};
        return poly;
    }

    // Project injectively onto the pivot coordinates, hull there, lift normals back.
    std::vector<Exponent> proj;
    for (const auto& p : pts) {
        Exponent q;
        for (auto c : pivots) q.push_back(p[c]);
        proj.push_back(std::move(q));
    }
    for (const auto& f : detail::hull_facets(proj, poly.dim)) {
        IntVector normal(n, BigInt(0));
        for (std::size_t i = 0; i < pivots.size(); ++i) normal[pivots[i]] = f.normal[i];
        poly.facets.push_back(Facet{normal, f.offset});
    }

    // A point is a vertex when its tight facet normals span the projected space.
    const std::size_t eq_count = 2 * (n - poly.dim);
    for (const auto& p : pts) {
        RatMatrix tight;
        for (std::size_t i = eq_count; i < poly.facets.size(); ++i) {
            const auto& f = poly.facets[i];
            if (sgn(f.slack(p)) != 0) continue;
            std::vector<Rational> r;
            for (auto c : pivots) r.emplace_back(f.normal[c]);
            tight.push_back(std::move(r));
        }
        if (!tight.empty() && rank(std::move(tight)) == poly.dim) poly.vertices.push_back(p);
    }
    return poly;
}

inline NewtonPolytope newton_polytope(const LaurentPoly& f) {
    if (f.is_zero()) throw AmoebaError("Newton polytope of the zero polynomial is undefined");
    return newton_polytope_of_points(f.support(), f.nvars());
}

inline std::size_t NewtonPolytope::minimal_face_dim(const Exponent& p) const {
    const std::size_t eq_count = 2 * (ambient_dim - dim);
    std::vector<const Facet*> tight;
    for (std::size_t i = eq_count; i < facets.size(); ++i)
        if (sgn(facets[i].slack(p)) == 0) tight.push_back(&facets[i]);
    if (tight.empty()) return dim;
    std::vector<Exponent> face;
    for (const auto& v : vertices)
        if (std::all_of(tight.begin(), tight.end(), [&](const Facet* f) { return sgn(f->slack(v)) == 0; }))
            face.push_back(v);
    return detail::affine_dim(face);
}

/// True iff dim Δ(F) equals the number of variables.
inline bool is_true_laurent(const LaurentPoly& f) { return newton_polytope(f).dim == f.nvars(); }

/// Closed cone {x : <ξ - α, x> <= 0 for every vertex ξ}.
struct Cone {
    std::vector<IntVector> inequalities;
    std::size_t dim = 0;
    std::size_t ambient_dim = 0;

    bool contains(const RationalPoint& x) const {
        for (const auto& a : inequalities) {
            Rational s = 0;
            for (std::size_t j = 0; j < a.size(); ++j) s += Rational(a[j]) * x[j];
            if (sgn(s) > 0) return false;
        }
        return true;
    }
    /// Γ ⊇ {x <= 0} iff every inequality normal is componentwise nonnegative.
    bool contains_negative_orthant() const {
        for (const auto& a : inequalities)
            for (const auto& v : a)
                if (sgn(v) < 0) return false;
        return true;
    }
};

inline Cone recession_cone(const NewtonPolytope& delta, const Exponent& alpha) {
    if (alpha.size() != delta.ambient_dim || !delta.contains(alpha))
        throw AmoebaError("recession_cone: point is outside the Newton polytope");
    Cone c;
    c.ambient_dim = delta.ambient_dim;
    std::set<IntVector> seen;
    for (const auto& v : delta.vertices) {
        if (v == alpha) continue;
        IntVector a(delta.ambient_dim);
        for (std::size_t j = 0; j < a.size(); ++j) a[j] = static_cast<long>(v[j] - alpha[j]);
        detail::primitive(a);
        if (seen.insert(a).second) c.inequalities.push_back(std::move(a));
    }
    c.dim = delta.ambient_dim - delta.minimal_face_dim(alpha);
    return c;
}

struct PolytopeStats {
    BigInt c_F = 0;
    Rational d_F = 0;
    /// Euclidean volume, the leading Ehrhart coefficient.
    Rational volume = 0;
    /// Ehrhart polynomial coefficients, constant term first.
    std::vector<Rational> ehrhart;

    Rational ehrhart_at(std::int64_t t) const {
        Rational v = 0, pw = 1;
        for (const auto& c : ehrhart) {
            v += c * pw;
            pw *= static_cast<long>(t);
        }
        return v;
    }
};

/// Largest t used when maximizing E(t)/t^n.
inline constexpr std::int64_t kEhrhartScanLimit = 1000;

inline PolytopeStats polytope_stats(const NewtonPolytope& delta) {
    const std::size_t n = delta.ambient_dim;
    if (delta.dim != n || n == 0) throw AmoebaError("polytope_stats: degenerate polytope");
    PolytopeStats st;
    auto [lo, hi] = delta.bounding_box();
    for (std::size_t j = 0; j < n; ++j) st.c_F = std::max(st.c_F, BigInt(static_cast<long>(hi[j] - lo[j])));

    // Lagrange interpolation through (t, E(t)), t = 0..n.
    std::vector<Rational> ys;
    for (std::size_t t = 0; t <= n; ++t) ys.emplace_back(delta.count_dilate(static_cast<std::int64_t>(t)));
    std::vector<Rational> coeffs(n + 1, Rational(0));
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<Rational> basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * Rational(static_cast<long>(j));
            }
            basis = std::move(next);
            denom *= Rational(static_cast<long>(i) - static_cast<long>(j));
        }
        for (std::size_t k = 0; k <= n; ++k) coeffs[k] += ys[i] * basis[k] / denom;
    }
    for (auto& c : coeffs) c.canonicalize();
    st.ehrhart = coeffs;
    st.volume = coeffs[n];
    st.d_F = st.volume;
    for (std::int64_t t = 1; t <= kEhrhartScanLimit; ++t) {
        Rational tn = 1;
        for (std::size_t k = 0; k < n; ++k) tn *= static_cast<long>(t);
        Rational ratio = st.ehrhart_at(t) / tn;
        if (ratio > st.d_F) st.d_F = ratio;
    }
    st.d_F.canonicalize();
    return st;
}

}  // namespace amoeba
