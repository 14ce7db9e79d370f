#pragma once

// Ronkin function estimates: trapezoid quadrature on the torus, the single-point doubling
// formula, affine certificates on complement components, the tropical proxy and Laplacian rasters.

#include "amoeba/doubling.hpp"
#include "amoeba/lopsided.hpp"
#include "amoeba/newton.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <thread>

namespace amoeba {

class NotCertifiedError : public AmoebaError {
public:
    using AmoebaError::AmoebaError;
};

struct RonkinEstimate {
    enum class Method { Quadrature, Doubling };
    double value = 0;
    /// Quadrature: |Q_N - Q_{N/2}|. Doubling: radius of the certified enclosure of the point formula.
    double error = 0;
    Method method = Method::Quadrature;
    /// Nodes per dimension, or the doubling depth k.
    int samples_or_k = 0;
    /// Quadrature nodes moved off a numerical zero of F.
    std::size_t jittered = 0;
};

inline const char* method_name(RonkinEstimate::Method m) {
    return m == RonkinEstimate::Method::Quadrature ? "quadrature" : "doubling";
}

namespace detail {

/// Terms of F rescaled at a fixed x: F(e^{x+iθ}) = e^{shift} Σ w_t e^{i<e_t,θ>}.
struct ScaledTerms {
    std::vector<Exponent> exps;
    std::vector<double> weights;
    double shift = 0;
};

inline ScaledTerms scale_terms(const LaurentPoly& f, std::span<const double> x) {
    ScaledTerms st;
    std::vector<double> logs;
    for (const auto& [e, c] : f.terms()) {
        double s = std::log(std::abs(c.get_d()));
        for (std::size_t j = 0; j < e.size(); ++j) s += static_cast<double>(e[j]) * x[j];
        st.exps.push_back(e);
        logs.push_back(s);
    }
    st.shift = logs.empty() ? 0 : *std::max_element(logs.begin(), logs.end());
    std::size_t i = 0;
    for (const auto& [e, c] : f.terms()) {
        st.weights.push_back((sgn(c) < 0 ? -1.0 : 1.0) * std::exp(logs[i] - st.shift));
        ++i;
    }
    return st;
}

/// Torus average of log|F(e^{x+iθ})| on the uniform grid with n per dimension and on its half grid.
struct QuadratureSums {
    double full = 0;
    double half = 0;
    std::size_t jittered = 0;
};

inline QuadratureSums quadrature_sums(const ScaledTerms& st, std::size_t nvars, int n) {
    const double two_pi = 2 * std::numbers::pi;
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) roots[static_cast<std::size_t>(m)] = std::polar(1.0, two_pi * m / n);
    // Only |F| relative to e^{shift} matters; values below this floor are numerical zeros.
    const double floor = 1e-13 * std::max(1.0, static_cast<double>(st.weights.size()));
    std::size_t total = 1;
    for (std::size_t j = 0; j < nvars; ++j) total *= static_cast<std::size_t>(n);
    std::vector<int> m(nvars, 0);
    QuadratureSums out;
    double sum_full = 0, sum_half = 0;
    std::size_t count_half = 0;
    for (std::size_t node = 0; node < total; ++node) {
        std::complex<double> v = 0;
        for (std::size_t t = 0; t < st.exps.size(); ++t) {
            long long idx = 0;
            for (std::size_t j = 0; j < nvars; ++j) idx += static_cast<long long>(st.exps[t][j]) * m[j];
            idx %= n;
            if (idx < 0) idx += n;
            v += st.weights[t] * roots[static_cast<std::size_t>(idx)];
        }
        double a = std::abs(v);
        if (a < floor) {
            // Move the node by a third of a grid step in every angle.
            ++out.jittered;
            v = 0;
            for (std::size_t t = 0; t < st.exps.size(); ++t) {
                double phase = 0;
                for (std::size_t j = 0; j < nvars; ++j) phase += static_cast<double>(st.exps[t][j]) * (m[j] + 1.0 / 3.0);
                v += st.weights[t] * std::polar(1.0, two_pi * phase / n);
            }
            a = std::max(std::abs(v), floor);
        }
        const double l = std::log(a);
        sum_full += l;
        if (std::all_of(m.begin(), m.end(), [](int q) { return q % 2 == 0; })) {
            sum_half += l;
            ++count_half;
        }
        for (std::size_t j = nvars; j-- > 0;) {
            if (++m[j] < n) break;
            m[j] = 0;
        }
    }
    out.full = st.shift + sum_full / static_cast<double>(total);
    out.half = st.shift + sum_half / static_cast<double>(count_half);
    return out;
}

inline std::vector<double> to_doubles(const RationalPoint& x) {
    std::vector<double> out;
    for (const auto& q : x) out.push_back(q.get_d());
    return out;
}

}  // namespace detail

/// Trapezoid rule for R_F(x) = ∫_{T^n} log|F(e^{x+iθ})| dθ/(2π)^n with grid_per_dim nodes per angle.
inline RonkinEstimate ronkin_quadrature(const LaurentPoly& f, std::span<const double> x, int grid_per_dim) {
    if (x.size() != f.nvars()) throw ArityError("ronkin_quadrature: point dimension mismatch");
    if (grid_per_dim < 4) throw AmoebaError("ronkin_quadrature: grid_per_dim must be at least 4");
    if (f.is_zero()) throw AmoebaError("ronkin_quadrature: F is zero");
    const double nodes = std::pow(static_cast<double>(grid_per_dim), static_cast<double>(f.nvars()));
    if (nodes > 1e8) throw ResourceError("ronkin_quadrature: too many nodes", 0);
    const auto sums = detail::quadrature_sums(detail::scale_terms(f, x), f.nvars(), grid_per_dim);
    RonkinEstimate out;
    out.value = sums.full;
    out.error = std::abs(sums.full - sums.half);
    out.samples_or_k = grid_per_dim;
    out.jittered = sums.jittered;
    return out;
}

inline RonkinEstimate ronkin_quadrature(const LaurentPoly& f, const RationalPoint& x, int grid_per_dim) {
    const auto xd = detail::to_doubles(x);
    return ronkin_quadrature(f, std::span<const double>(xd), grid_per_dim);
}

/// (1/2^{kn}) log|G_k(e^{2^k x})|: the Riemann sum of R_F over the 2^k-th roots of unity,
/// telescoped into a single evaluation of the k-th doubling iterate.
inline RonkinEstimate ronkin_via_doubling(const LaurentPoly& f, const RationalPoint& x, int k,
                                          mpfr_prec_t precision_cap = 8192, const DoublingLimits& limits = {}) {
    if (x.size() != f.nvars()) throw ArityError("ronkin_via_doubling: point dimension mismatch");
    if (k < 0) throw AmoebaError("ronkin_via_doubling: k must be nonnegative");
    const auto seq = cyclic_resultant(f, k, limits);
    const LaurentPoly& g = seq.current();
    const std::size_t n = f.nvars();
    const unsigned long scale_bits = static_cast<unsigned long>(k) * n;
    for (mpfr_prec_t prec = 128; prec <= precision_cap; prec *= 2) {
        std::vector<ComplexInterval> y;
        for (const auto& q : x) {
            const Rational s(q * (BigInt(1) << static_cast<unsigned long>(k)));
            y.emplace_back(exp(Interval::from_rational(s, prec)), Interval::from_int(0, prec));
        }
        const Interval mag = g.evaluate(y).abs();
        if (!mag.certainly_positive()) continue;
        const Interval l = log(mag).mul_2exp(-static_cast<long>(scale_bits));
        if (l.width() <= 1e-15 * std::max(1.0, std::abs(l.mid())) || prec * 2 > precision_cap) {
            RonkinEstimate out;
            out.value = l.mid();
            out.error = l.width() / 2;
            out.method = RonkinEstimate::Method::Doubling;
            out.samples_or_k = k;
            return out;
        }
    }
    throw UndeterminedError("ronkin_via_doubling: |G_k| not separated from zero at the precision cap");
}

struct AffineCertificate {
    Exponent alpha;
    /// R_F(x) - <α, x> from quadrature.
    double rho = 0;
    double error = 0;
    /// Doubling depth at which x was certified outside the amoeba.
    int depth = 0;
    bool vertex = false;
    /// log|c_α| when α is a vertex of the Newton polytope.
    std::optional<double> vertex_log_coeff;
};

/// Depth k ≤ k_max at which G_k is lopsided at 2^k x, with the winner's component index.
inline std::optional<std::pair<int, Exponent>> certify_component(const LaurentPoly& f, const RationalPoint& x, int k_max,
                                                                 const NewtonPolytope& delta,
                                                                 const DoublingLimits& limits = {}) {
    DoublingSequence seq(f, limits);
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) seq.step();
        RationalPoint y;
        for (const auto& q : x) y.push_back(Rational(q * (BigInt(1) << static_cast<unsigned long>(k))));
        try {
            const auto out = lopsided_membership(seq.current(), y);
            if (out.lopsided)
                if (auto a = classify_component(*out.winner, k, f.nvars(), delta)) return std::make_pair(k, *a);
        } catch (const UndeterminedError&) {
        }
    }
    return std::nullopt;
}

/// ρ_α at a point certified to lie in the complement component E_α.
inline AffineCertificate affine_certificate(const LaurentPoly& f, const Exponent& alpha, const RationalPoint& x,
                                            int grid_per_dim = 128, int k_max = 6) {
    if (alpha.size() != f.nvars() || x.size() != f.nvars()) throw ArityError("affine_certificate: dimension mismatch");
    const auto delta = newton_polytope(f);
    const auto cert = certify_component(f, x, k_max, delta);
    if (!cert) throw NotCertifiedError("affine_certificate: x is not certified outside the amoeba");
    if (cert->second != alpha) throw NotCertifiedError("affine_certificate: x lies in a different component");
    const auto r = ronkin_quadrature(f, x, grid_per_dim);
    AffineCertificate out;
    out.alpha = alpha;
    double dot = 0;
    for (std::size_t j = 0; j < alpha.size(); ++j) dot += static_cast<double>(alpha[j]) * x[j].get_d();
    out.rho = r.value - dot;
    out.error = r.error;
    out.depth = cert->first;
    out.vertex = delta.is_vertex(alpha);
    if (out.vertex) out.vertex_log_coeff = std::log(std::abs(f.coefficient(alpha).get_d()));
    return out;
}

/// x ↦ max_α (ρ_α + <α, x>).
struct TropicalProxy {
    std::vector<std::pair<Exponent, double>> pieces;

    double operator()(std::span<const double> x) const {
        const auto& [alpha, rho] = pieces.at(argmax(x));
        return rho + dot(alpha, x);
    }
    std::size_t argmax(std::span<const double> x) const {
        std::size_t best = 0;
        double v = -INFINITY;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const double w = pieces[i].second + dot(pieces[i].first, x);
            if (w > v) {
                v = w;
                best = i;
            }
        }
        return best;
    }

private:
    static double dot(const Exponent& a, std::span<const double> x) {
        double s = 0;
        for (std::size_t j = 0; j < a.size(); ++j) s += static_cast<double>(a[j]) * x[j];
        return s;
    }
};

inline TropicalProxy tropical_proxy(const std::vector<std::pair<Exponent, double>>& certificates) {
    if (certificates.empty()) throw AmoebaError("tropical_proxy: no certificates");
    return {certificates};
}

/// Certificates at every vertex of the Newton polytope: ρ_α = log|c_α|.
inline std::vector<std::pair<Exponent, double>> vertex_certificates(const LaurentPoly& f) {
    std::vector<std::pair<Exponent, double>> out;
    for (const auto& v : newton_polytope(f).vertices) out.emplace_back(v, std::log(std::abs(f.coefficient(v).get_d())));
    return out;
}

struct BoundingBox {
    double x1_min = -1, x1_max = 1, x2_min = -1, x2_max = 1;
};

/// res x res matrix; row r, column c is the cell centred at
/// (x1_min + (c + 1/2) h1, x2_min + (r + 1/2) h2).
struct Raster {
    BoundingBox bbox;
    int resolution = 0;
    std::vector<double> values;

    double at(int row, int col) const { return values[static_cast<std::size_t>(row * resolution + col)]; }
};

/// 5-point discrete Laplacian of the quadrature Ronkin field on the cell centres.
inline Raster laplacian_raster(const LaurentPoly& f, const BoundingBox& bbox, int resolution, int grid_per_dim = 64,
                               unsigned threads = 1) {
    if (f.nvars() != 2) throw ArityError("laplacian_raster: F must be bivariate");
    if (resolution < 1) throw AmoebaError("laplacian_raster: resolution must be positive");
    if (!(bbox.x1_max > bbox.x1_min) || !(bbox.x2_max > bbox.x2_min)) throw AmoebaError("laplacian_raster: empty box");
    const int m = resolution + 2;
    const double h1 = (bbox.x1_max - bbox.x1_min) / resolution, h2 = (bbox.x2_max - bbox.x2_min) / resolution;
    std::vector<double> field(static_cast<std::size_t>(m * m));
    auto fill_rows = [&](int r0, int r1) {
        for (int r = r0; r < r1; ++r)
            for (int c = 0; c < m; ++c) {
                const double x[2] = {bbox.x1_min + (c - 0.5) * h1, bbox.x2_min + (r - 0.5) * h2};
                field[static_cast<std::size_t>(r * m + c)] = ronkin_quadrature(f, std::span<const double>(x, 2), grid_per_dim).value;
            }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(m)));
    if (threads == 1) {
        fill_rows(0, m);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(fill_rows, static_cast<int>(t * m / threads), static_cast<int>((t + 1) * m / threads));
        for (auto& th : pool) th.join();
    }
    Raster out{bbox, resolution, std::vector<double>(static_cast<std::size_t>(resolution * resolution))};
    auto fv = [&](int r, int c) { return field[static_cast<std::size_t>(r * m + c)]; };
    for (int r = 1; r <= resolution; ++r)
        for (int c = 1; c <= resolution; ++c) {
            const double lap = (fv(r, c - 1) - 2 * fv(r, c) + fv(r, c + 1)) / (h1 * h1) +
                               (fv(r - 1, c) - 2 * fv(r, c) + fv(r + 1, c)) / (h2 * h2);
            out.values[static_cast<std::size_t>((r - 1) * resolution + (c - 1))] = lap;
        }
    return out;
}

struct PgmScale {
    double min = 0;
    double max = 0;
};

/// PGM P2 with values mapped affinely onto 0..255; the top image row is the largest x2.
inline PgmScale write_pgm(std::ostream& os, const Raster& r) {
    PgmScale s;
    if (!r.values.empty()) {
        const auto [lo, hi] = std::minmax_element(r.values.begin(), r.values.end());
        s = {*lo, *hi};
    }
    const double span = s.max > s.min ? s.max - s.min : 1;
    os << "P2\n" << r.resolution << ' ' << r.resolution << "\n255\n";
    for (int row = r.resolution; row-- > 0;) {
        for (int c = 0; c < r.resolution; ++c) {
            const long v = std::lround(255 * (r.at(row, c) - s.min) / span);
            os << v << (c + 1 < r.resolution ? ' ' : '\n');
        }
    }
    return s;
}

}  // namespace amoeba
