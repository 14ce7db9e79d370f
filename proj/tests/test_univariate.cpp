#include "amoeba/text_io.hpp"
#include "amoeba/univariate.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace amoeba;

namespace {

UnivariatePoly P(std::initializer_list<long> c) { return UnivariatePoly::from_integers(c); }

bool box_contains(const RootBox& b, std::complex<double> z) {
    return b.re.lower_double() <= z.real() + 1e-12 && z.real() - 1e-12 <= b.re.upper_double() &&
           b.im.lower_double() <= z.imag() + 1e-12 && z.imag() - 1e-12 <= b.im.upper_double();
}

bool some_box_contains(const std::vector<RootBox>& boxes, std::complex<double> z) {
    return std::any_of(boxes.begin(), boxes.end(), [&](const RootBox& b) { return box_contains(b, z); });
}

UnivariatePoly random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> dd(1, max_deg), cd(-6, 6);
    const int d = dd(rng);
    std::vector<BigInt> c(static_cast<std::size_t>(d + 1));
    for (auto& v : c) v = cd(rng);
    if (c.back() == 0) c.back() = 1;
    return UnivariatePoly::from_integers(c);
}

}  // namespace

TEST(SchurCohn, Examples) {
    EXPECT_TRUE(schur_cohn_stable_disk(P({-2, 1})));
    EXPECT_FALSE(schur_cohn_stable_disk(P({-1, 2})));
    EXPECT_FALSE(schur_cohn_stable_disk(P({2, -5, 2})));
    EXPECT_FALSE(schur_cohn_stable_disk(P({1, 1})));  // root on the circle
    EXPECT_TRUE(schur_cohn_stable_disk(P({7})));
    EXPECT_FALSE(schur_cohn_stable_disk(P({0, 1, 3})));
    // (z - 2)(z - 3i) over Q(i).
    UnivariatePoly q({GaussRational(0, 6), GaussRational(-2, -3), GaussRational(1)});
    EXPECT_TRUE(schur_cohn_stable_disk(q));
}

TEST(SchurCohn, AgreesWithRootIsolationOnRandomPolynomials) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_poly(rng, 6);
        const bool stable = schur_cohn_stable_disk(p);
        const auto boxes = isolate_roots(p, 40);
        bool all_out = true;
        for (const auto& b : boxes)
            if (!Interval::from_int(1, 64).certainly_less(b.enclosure().abs())) all_out = false;
        EXPECT_EQ(stable, all_out) << i;
    }
}

TEST(UnitCircleRoots, Examples) {
    const auto a = roots_on_unit_circle(P({1, 0, 1}));
    ASSERT_EQ(a.size(), 2u);
    EXPECT_TRUE(some_box_contains(a, {0, 1}));
    EXPECT_TRUE(some_box_contains(a, {0, -1}));
    for (const auto& b : a) EXPECT_TRUE(b.exact.has_value());
    EXPECT_TRUE(roots_on_unit_circle(P({-2, 1})).empty());
    EXPECT_TRUE(roots_on_unit_circle(P({1, 4, 1})).empty());
    // Cube roots of unity and 1 itself, with a double root at -1.
    const auto c = roots_on_unit_circle(P({-1, 0, 0, 1}) * P({1, 1}) * P({1, 1}));
    EXPECT_EQ(c.size(), 4u);
    for (const auto& b : c)
        if (box_contains(b, {-1, 0})) {
            EXPECT_EQ(b.multiplicity, 2);
        }
    EXPECT_TRUE(some_box_contains(c, {-0.5, std::sqrt(3.0) / 2}));
    EXPECT_TRUE(some_box_contains(c, {1, 0}));
}

TEST(UnitCircleRoots, ReciprocalPairsOffTheCircleAreExcluded) {
    // (z - 2)(2z - 1) is self-reciprocal but has no circle roots.
    EXPECT_TRUE(roots_on_unit_circle(P({-2, 1}) * P({-1, 2})).empty());
    // (z - 3/5 - 4i/5) has an exact Gaussian-rational circle root.
    UnivariatePoly q({GaussRational(Rational(-3, 5), Rational(-4, 5)), GaussRational(1)});
    const auto r = roots_on_unit_circle(q);
    ASSERT_EQ(r.size(), 1u);
    ASSERT_TRUE(r[0].exact.has_value());
    EXPECT_EQ(*r[0].exact, GaussRational(Rational(3, 5), Rational(4, 5)));
}

TEST(UnitCircleRoots, MatchesCircleGridMinimum) {
    std::mt19937_64 rng(77);
    const double pi = 3.141592653589793;
    for (int i = 0; i < 100; ++i) {
        auto p = random_poly(rng, 5);
        if (i % 3 == 0) p = p * P({1, 0, 1});
        const bool none = roots_on_unit_circle(p).empty();
        double minv = 1e300;
        for (int k = 0; k < 4096; ++k) {
            const auto z = std::polar(1.0L, 2 * pi * k / 4096.0L);
            minv = std::min<double>(minv, std::abs(p.evaluate(z)));
        }
        if (i % 3 == 0) {
            EXPECT_FALSE(none);
        }
        // A circle root makes the grid minimum small; without one the grid minimum stays positive.
        if (none) {
            EXPECT_GT(minv, 0.0);
        } else {
            EXPECT_LT(minv, 0.05);
        }
    }
}

TEST(IsolateRoots, Examples) {
    const auto a = isolate_roots(P({4, -5, 1}));
    ASSERT_EQ(a.size(), 2u);
    EXPECT_TRUE(some_box_contains(a, {1, 0}));
    EXPECT_TRUE(some_box_contains(a, {4, 0}));
    const auto b = isolate_roots(P({1, -2, 1}));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].multiplicity, 2);
    EXPECT_TRUE(box_contains(b[0], {1, 0}));
    const auto c = isolate_roots(P({-1, 0, 0, 1}), 80);
    ASSERT_EQ(c.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_TRUE(some_box_contains(c, std::polar(1.0, 2 * 3.141592653589793 * k / 3)));
    for (const auto& box : c) EXPECT_LT(box.re.width(), 1e-20);
    EXPECT_THROW(isolate_roots(P({3})), AmoebaError);
}

TEST(IsolateRoots, BoxesAreDisjointAndCountRootsWithMultiplicity) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        auto p = random_poly(rng, 4);
        if (i % 4 == 0) p = p * p;
        if (i % 5 == 0) p = p * P({0, 0, 1});
        const auto boxes = isolate_roots(p, 50);
        int total = 0;
        for (const auto& b : boxes) total += b.multiplicity;
        EXPECT_EQ(total, p.degree());
        for (std::size_t a = 0; a < boxes.size(); ++a)
            for (std::size_t c = a + 1; c < boxes.size(); ++c) EXPECT_FALSE(boxes[a].overlaps(boxes[c]));
        for (const auto& b : boxes) EXPECT_TRUE(p.evaluate(b.enclosure()).contains_zero());
    }
}

TEST(ConjugateReciprocal, Examples) {
    EXPECT_EQ(conjugate_reciprocal(parse_poly("4 + X1 + X2"), {1, 1}), parse_poly("4*X1*X2 + X2 + X1"));
    EXPECT_EQ(conjugate_reciprocal(parse_poly("2 + X1"), {1}), parse_poly("2*X1 + 1"));
    EXPECT_EQ(conjugate_reciprocal(parse_poly("1 + X1"), {1}), parse_poly("1 + X1"));
    EXPECT_THROW(conjugate_reciprocal(parse_poly("1 + X1^2"), {1}), AmoebaError);
}

TEST(ConjugateReciprocal, RootsAreInverseConjugates) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> cd(-5, 5);
    for (int i = 0; i < 30; ++i) {
        std::vector<GaussRational> c(4);
        for (auto& v : c) v = GaussRational(Rational(cd(rng)), Rational(cd(rng)));
        c[0] = GaussRational(Rational(cd(rng) == 0 ? 1 : 2), Rational(1));
        c[3] = GaussRational(1, 1);
        const UnivariatePoly p(c);
        const auto q = p.conjugate_reciprocal();
        for (const auto& b : isolate_roots(p, 60)) {
            const std::complex<double> z = b.mid();
            const std::complex<double> w = 1.0 / std::conj(z);
            EXPECT_LT(std::abs(std::complex<double>(q.evaluate(std::complex<long double>(w)))), 1e-8 * (1 + std::norm(w) * std::abs(w)));
        }
    }
}

TEST(Univariate, GcdAndSquarefree) {
    const auto g = gcd(P({-1, 0, 1}), P({1, 2, 1}));
    EXPECT_EQ(g, P({1, 1}));
    const auto f = squarefree_decomposition(P({-1, 1}) * P({-1, 1}) * P({2, 1}));
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].first, P({2, 1}));
    EXPECT_EQ(f[0].second, 1);
    EXPECT_EQ(f[1].first, P({-1, 1}));
    EXPECT_EQ(f[1].second, 2);
    EXPECT_EQ(detail::simplest_rational(Rational(1, 3), Rational(1, 2)), Rational(1, 2));
    EXPECT_EQ(detail::simplest_rational(Rational(31, 100), Rational(34, 100)), Rational(1, 3));
    EXPECT_EQ(detail::simplest_rational(Rational(-7, 3), Rational(-2, 1)), Rational(-2));
}
