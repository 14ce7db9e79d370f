#include "amoeba/ronkin.hpp"
#include "amoeba/text_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace amoeba;

namespace {

const double kLn2 = std::log(2.0);

// For F = a + b X1 + c X2, Jensen in θ2 reduces R_F to a one-dimensional average of
// max(log|a + b e^{x1+iθ1}|, log|c| + x2), integrated here on a fine midpoint grid.
double linear_ronkin_oracle(double a, double b, double c, double x1, double x2) {
    const int n = 200000;
    double s = 0;
    for (int i = 0; i < n; ++i) {
        const double t = 2 * M_PI * (i + 0.5) / n;
        const double u = std::log(std::abs(a + b * std::polar(std::exp(x1), t)));
        s += std::max(u, std::log(std::abs(c)) + x2);
    }
    return s / n;
}

double quad(const LaurentPoly& f, std::vector<double> x, int n, double* err = nullptr) {
    const auto r = ronkin_quadrature(f, std::span<const double>(x), n);
    if (err) *err = r.error;
    return r.value;
}

}  // namespace

TEST(RonkinQuadrature, JensenInOneVariable) {
    const auto f = parse_poly("2 - X1");
    EXPECT_NEAR(quad(f, {0.0}, 256), kLn2, 1e-6);
    EXPECT_NEAR(quad(f, {2.0}, 256), 2.0, 1e-6);
    EXPECT_NEAR(quad(f, {-1.5}, 256), kLn2, 1e-6);
    EXPECT_THROW(quad(f, {0.0}, 2), AmoebaError);
}

TEST(RonkinQuadrature, VertexComponentValue) {
    EXPECT_NEAR(quad(parse_poly("4 + X1 + X2"), {-3, -3}, 256), std::log(4.0), 1e-3);
}

TEST(RonkinQuadrature, MatchesLinearOracle) {
    const auto f = parse_poly("3 + 2*X1 - X2");
    for (const auto& x : std::vector<std::pair<double, double>>{{0, 0}, {0.5, 1}, {-1, 1.2}, {1, 1}, {0.4, 0.1}})
        EXPECT_NEAR(quad(f, {x.first, x.second}, 256), linear_ronkin_oracle(3, 2, -1, x.first, x.second), 2e-4)
            << x.first << "," << x.second;
}

TEST(RonkinQuadrature, NodesOnTheZeroSetAreJittered) {
    // 1 + X1 vanishes at θ = π, a node for even grids.
    const auto r = ronkin_quadrature(parse_poly("1 + X1"), RationalPoint{Rational(0)}, 64);
    EXPECT_EQ(r.jittered, 1u);
    EXPECT_TRUE(std::isfinite(r.value));
    EXPECT_NEAR(r.value, 0.0, 0.1);
}

TEST(RonkinDoubling, Examples) {
    const auto f = parse_poly("2 - X1");
    const auto a = ronkin_via_doubling(f, {Rational(0)}, 4);
    EXPECT_NEAR(a.value, std::log(65535.0) / 16, 1e-14);
    EXPECT_NEAR(a.value, kLn2, 1e-4);
    EXPECT_EQ(a.samples_or_k, 4);
    const auto b = ronkin_via_doubling(f, {Rational(2)}, 2);
    EXPECT_NEAR(b.value, std::log(std::exp(8.0) - 16) / 4, 1e-12);
    EXPECT_NEAR(b.value, 1.998655, 1e-6);
    const auto c = ronkin_via_doubling(parse_poly("3 + X1 + X2"), {Rational(0), Rational(0)}, 3);
    EXPECT_NEAR(c.value, quad(parse_poly("3 + X1 + X2"), {0, 0}, 256), 5e-3);
}

TEST(RonkinDoubling, ZeroOnTheGridIsUndetermined) {
    // F_N(1) = 0 for 1 - X1.
    EXPECT_THROW(ronkin_via_doubling(parse_poly("1 - X1"), {Rational(0)}, 2, 512), UndeterminedError);
}

TEST(RonkinDoubling, ErrorShrinksWithDepthOutsideTheAmoeba) {
    struct Case {
        const char* f;
        RationalPoint x;
    };
    for (const auto& c : {Case{"3 + X1 + X2", {Rational(0), Rational(0)}}, Case{"1 + 4*X1 + X2", {Rational(2), Rational(0)}},
                          Case{"4 - 2*X1 - 2*X2 + X1*X2", {Rational(-1), Rational(-1)}}}) {
        const auto f = parse_poly(c.f);
        const double ref = ronkin_quadrature(f, c.x, 256).value;
        double prev = INFINITY;
        for (int k = 0; k <= 4; ++k) {
            const double gap = std::abs(ronkin_via_doubling(f, c.x, k).value - ref);
            EXPECT_LE(gap, prev + 1e-12) << c.f << " k=" << k;
            prev = gap;
        }
        EXPECT_LT(prev, 1e-3) << c.f;
    }
}

TEST(AffineCertificate, Examples) {
    const auto a = affine_certificate(parse_poly("3 + X1 + X2"), {0, 0}, {Rational(-2), Rational(-2)});
    EXPECT_NEAR(a.rho, std::log(3.0), 1e-3);
    EXPECT_TRUE(a.vertex);
    EXPECT_NEAR(*a.vertex_log_coeff, std::log(3.0), 1e-15);

    const auto b = affine_certificate(parse_poly("4 - 2*X1 - 2*X2 + X1*X2"), {0, 0}, {Rational(-1), Rational(-1)});
    EXPECT_NEAR(b.rho, std::log(4.0), 1e-3);

    const auto c = affine_certificate(parse_poly("1 + 4*X1 + X2"), {1, 0}, {Rational(2), Rational(0)});
    EXPECT_NEAR(c.rho, std::log(4.0), 1e-3);
    EXPECT_EQ(c.depth, 0);

    EXPECT_THROW(affine_certificate(parse_poly("2 + X1 + X2"), {0, 0}, {Rational(0), Rational(0)}, 64, 2),
                 NotCertifiedError);
    EXPECT_THROW(affine_certificate(parse_poly("3 + X1 + X2"), {1, 0}, {Rational(-2), Rational(-2)}), NotCertifiedError);
}

TEST(AffineCertificate, InteriorComponentIsEstimated) {
    // The interior point (1,1) wins at the origin.
    const auto f = parse_poly("1 + X1^2*X2 + X1*X2^2 + 9*X1*X2");
    const auto c = affine_certificate(f, {1, 1}, {Rational(0), Rational(0)});
    EXPECT_FALSE(c.vertex);
    EXPECT_FALSE(c.vertex_log_coeff.has_value());
    EXPECT_GT(c.rho, std::log(9.0) - 0.5);
}

TEST(TropicalProxy, Examples) {
    const auto f = parse_poly("3 + X1 + X2");
    const auto p = tropical_proxy(vertex_certificates(f));
    const double a[2] = {-5, -5}, b[2] = {5, 0};
    EXPECT_NEAR(p(std::span<const double>(a, 2)), std::log(3.0), 1e-15);
    EXPECT_NEAR(p(std::span<const double>(b, 2)), 5.0, 1e-15);
    EXPECT_EQ(p.pieces[p.argmax(std::span<const double>(b, 2))].first, (Exponent{1, 0}));
    const auto one = tropical_proxy({{Exponent{0, 0}, 1.25}});
    EXPECT_EQ(one(std::span<const double>(b, 2)), 1.25);
    EXPECT_THROW(tropical_proxy({}), AmoebaError);
}

TEST(RonkinProperties, Convexity) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xd(-2.5, 2.5);
    for (const char* text : {"3 + X1 + X2", "1 + X1 + X2 + X1*X2", "2 - X1 + 3*X2^2 + X1*X2"}) {
        const auto f = parse_poly(text);
        for (int i = 0; i < 30; ++i) {
            const std::vector<double> a{xd(rng), xd(rng)}, b{xd(rng), xd(rng)};
            const std::vector<double> m{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
            double ea = 0, eb = 0, em = 0;
            const double ra = quad(f, a, 128, &ea), rb = quad(f, b, 128, &eb), rm = quad(f, m, 128, &em);
            EXPECT_LE(rm, (ra + rb) / 2 + 2 * std::max({ea, eb, em}) + 1e-9) << text << " " << i;
        }
    }
}

TEST(RonkinProperties, AffineOnCertifiedComponents) {
    const auto f = parse_poly("3 + X1 + X2");
    const auto delta = newton_polytope(f);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> xd(-40, 40);
    int checked = 0;
    for (int i = 0; i < 60 && checked < 20; ++i) {
        RationalPoint p{Rational(xd(rng), 8), Rational(xd(rng), 8)}, d{Rational(xd(rng), 80), Rational(xd(rng), 80)};
        RationalPoint q{Rational(p[0] + d[0]), Rational(p[1] + d[1])}, r{Rational(p[0] + 2 * d[0]), Rational(p[1] + 2 * d[1])};
        const auto cp = certify_component(f, p, 3, delta), cq = certify_component(f, q, 3, delta),
                   cr = certify_component(f, r, 3, delta);
        if (!cp || !cq || !cr || cp->second != cq->second || cq->second != cr->second) continue;
        const auto a = ronkin_quadrature(f, p, 128), b = ronkin_quadrature(f, q, 128), c = ronkin_quadrature(f, r, 128);
        EXPECT_NEAR(a.value - 2 * b.value + c.value, 0.0, 3 * std::max({a.error, b.error, c.error}) + 1e-12);
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(RonkinProperties, ProxyIsBelowRonkinAndEqualOutsideTheAmoeba) {
    const auto f = parse_poly("3 + X1 + X2");
    const auto p = tropical_proxy(vertex_certificates(f));
    const auto delta = newton_polytope(f);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> xd(-48, 48);
    int exterior = 0;
    for (int i = 0; i < 100; ++i) {
        const RationalPoint x{Rational(xd(rng), 16), Rational(xd(rng), 16)};
        const std::vector<double> xv{x[0].get_d(), x[1].get_d()};
        double err = 0;
        const double r = quad(f, xv, 128, &err);
        const double pv = p(std::span<const double>(xv));
        EXPECT_LE(pv, r + err + 1e-9);
        if (certify_component(f, x, 2, delta)) {
            EXPECT_NEAR(pv, r, err + 1e-9);
            ++exterior;
        }
    }
    EXPECT_GT(exterior, 30);
}

TEST(LaplacianRaster, ProductOfLinesConcentratesOnLogTwoLines) {
    const BoundingBox box{-1, 2, -1, 2};
    const auto r = laplacian_raster(parse_poly("4 - 2*X1 - 2*X2 + X1*X2"), box, 64, 64);
    std::vector<double> mags;
    for (double v : r.values) mags.push_back(std::abs(v));
    auto sorted = mags;
    std::sort(sorted.begin(), sorted.end());
    const double decile = sorted[sorted.size() * 9 / 10];
    const double h = 3.0 / 64;
    for (int row = 0; row < 64; ++row)
        for (int col = 0; col < 64; ++col) {
            if (std::abs(r.at(row, col)) < decile || std::abs(r.at(row, col)) == 0) continue;
            const double x1 = box.x1_min + (col + 0.5) * h, x2 = box.x2_min + (row + 0.5) * h;
            EXPECT_LE(std::min(std::abs(x1 - kLn2), std::abs(x2 - kLn2)), 2 * h) << row << "," << col;
        }
}

TEST(LaplacianRaster, SimplexOriginBallIsQuiet) {
    const BoundingBox box{-1, 2, -1, 2};
    const auto r = laplacian_raster(parse_poly("3 + X1 + X2"), box, 64, 64);
    std::vector<double> mags;
    for (double v : r.values) mags.push_back(std::abs(v));
    auto sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double h = 3.0 / 64;
    for (int row = 0; row < 64; ++row)
        for (int col = 0; col < 64; ++col) {
            const double x1 = box.x1_min + (col + 0.5) * h, x2 = box.x2_min + (row + 0.5) * h;
            // With more than half the box outside the amoeba the median itself is rounding noise.
            if (std::hypot(x1, x2) < 0.4) {
                EXPECT_LE(std::abs(r.at(row, col)), std::max(median, 1e-8));
            }
        }
}

TEST(LaplacianRaster, ConstantPolynomialIsFlat) {
    const auto r = laplacian_raster(parse_poly("5", 2), {-1, 2, -1, 2}, 16, 16);
    for (double v : r.values) EXPECT_LT(std::abs(v), 1e-6);
}

TEST(LaplacianRaster, ThreadedMatchesSerial) {
    const auto f = parse_poly("2 + X1 + X2");
    const auto a = laplacian_raster(f, {-1, 1, -1, 1}, 12, 32, 1), b = laplacian_raster(f, {-1, 1, -1, 1}, 12, 32, 3);
    EXPECT_EQ(a.values, b.values);
}

TEST(LaplacianRaster, PgmOutput) {
    Raster r{{0, 1, 0, 1}, 2, {0.0, 1.0, 2.0, 4.0}};
    std::ostringstream os;
    const auto s = write_pgm(os, r);
    EXPECT_EQ(s.min, 0.0);
    EXPECT_EQ(s.max, 4.0);
    EXPECT_EQ(os.str(), "P2\n2 2\n255\n128 255\n0 64\n");
}
