#include "amoeba/stability.hpp"
#include "amoeba/text_io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace amoeba;

namespace {

LaurentPoly random_bivariate(std::mt19937_64& rng, int deg) {
    std::uniform_int_distribution<int> ed(0, deg), cd(-5, 5), nd(2, 6);
    LaurentPoly f(2);
    const int terms = nd(rng);
    for (int t = 0; t < terms; ++t) f.add_term({ed(rng), ed(rng)}, cd(rng));
    const int c = cd(rng);
    f.add_term({0, 0}, c == 0 ? 1 : c);
    return f;
}

bool conclusive(const StabilityVerdict& v) {
    return v.kind == VerdictKind::StronglyStable || v.kind == VerdictKind::UnstableInComponent;
}

}  // namespace

TEST(Preconditions, Examples) {
    const auto a = check_preconditions(parse_poly("3 + X1 + X2"));
    EXPECT_TRUE(a.ok());
    EXPECT_TRUE(a.zero_in_support);

    const auto b = check_preconditions(parse_poly("X1 + X2 + 3*X1*X2"));
    EXPECT_TRUE(b.ok());
    EXPECT_FALSE(b.zero_in_support);

    const auto c = check_preconditions(parse_poly("X1 + X1*X2"));
    EXPECT_FALSE(c.ok());
    EXPECT_FALSE(c.checks[1].passed);
    EXPECT_TRUE(c.checks[2].passed);

    EXPECT_FALSE(check_preconditions(parse_poly("1 + X1^-1 + X2")).ok());
    EXPECT_FALSE(check_preconditions(parse_poly("1 + X1*X2")).ok());
    EXPECT_EQ(decide_strong_bibo(parse_poly("X1 + X1*X2"), 10, 4).kind, VerdictKind::PreconditionFailed);
}

TEST(StrongBibo, Examples) {
    const auto a = decide_strong_bibo(parse_poly("3 + X1 + X2"), 10, 12);
    EXPECT_EQ(a.kind, VerdictKind::StronglyStable);
    EXPECT_EQ(a.k_used, 0);
    EXPECT_EQ(a.component, (Exponent{0, 0}));
    ASSERT_NE(a.find(Assertion::A0), nullptr);
    EXPECT_EQ(a.find(Assertion::A0)->status, AssertionStatus::Validated);

    const auto b = decide_strong_bibo(parse_poly("4 - 2*X1 - 2*X2 + X1*X2"), 10, 12);
    EXPECT_EQ(b.kind, VerdictKind::StronglyStable);
    EXPECT_EQ(b.k_used, 2);
    EXPECT_EQ(b.evidence["margin"], "1614177151");

    const auto c = decide_strong_bibo(parse_poly("1 + 4*X1 + X2"), 10, 12);
    EXPECT_EQ(c.kind, VerdictKind::UnstableInComponent);
    EXPECT_EQ(c.component, (Exponent{1, 0}));
    EXPECT_EQ(c.k_used, 0);

    const auto d = decide_strong_bibo(parse_poly("1 + X1 + X2"), 6, 12);
    EXPECT_EQ(d.kind, VerdictKind::Inconclusive);
    EXPECT_EQ(d.reason, "origin in amoeba");
    EXPECT_TRUE(d.evidence.contains("M0"));
    EXPECT_TRUE(d.evidence.contains("k_reached"));

    const auto e = decide_strong_bibo(parse_poly("X1 + X2 + 3*X1*X2"), 10, 12);
    EXPECT_EQ(e.kind, VerdictKind::UnstableInComponent);
    EXPECT_EQ(e.component, (Exponent{1, 1}));
    EXPECT_EQ(exit_code(e.kind), 1);
}

TEST(StrongBibo, ThresholdAndKMaxReasons) {
    StrongOptions no_shortcut;
    no_shortcut.oracle_shortcut = false;
    const auto f = parse_poly("1 + X1 + X2");
    const auto a = decide_strong_bibo(f, 1, 12, no_shortcut);
    EXPECT_EQ(a.kind, VerdictKind::Inconclusive);
    EXPECT_EQ(a.reason, "threshold");
    EXPECT_EQ(a.find(Assertion::A_threshold)->status, AssertionStatus::Disproved);

    const auto b = decide_strong_bibo(f, 16, 2, no_shortcut);
    EXPECT_EQ(b.reason, "k_max");
    EXPECT_EQ(b.evidence["k_reached"], 2);

    DoublingLimits tight;
    tight.max_terms = 5;
    no_shortcut.limits = tight;
    const auto c = decide_strong_bibo(f, 16, 8, no_shortcut);
    EXPECT_EQ(c.reason, "resources");
    EXPECT_EQ(c.kind, VerdictKind::Inconclusive);
}

TEST(StrongBibo, OneVariable) {
    EXPECT_EQ(decide_strong_bibo(parse_poly("3 - X1"), 8, 8).kind, VerdictKind::StronglyStable);
    const auto v = decide_strong_bibo(parse_poly("1 - 3*X1"), 8, 8);
    EXPECT_EQ(v.kind, VerdictKind::UnstableInComponent);
    EXPECT_EQ(v.component, (Exponent{1}));
    // 2 - 3X + X^2 = (1 - X)(2 - X) has a root on the unit circle.
    EXPECT_EQ(decide_strong_bibo(parse_poly("2 - 3*X1 + X1^2"), 8, 8).kind, VerdictKind::Inconclusive);
}

TEST(WeakBibo, Examples) {
    const auto a = decide_weak_bibo_2d(parse_poly("2 + X1 + X2"), 16, Rational(1, 4));
    EXPECT_EQ(a.kind, VerdictKind::WeaklyStable);
    EXPECT_EQ(exit_code(a.kind), 2);
    EXPECT_EQ(a.find(Assertion::B)->status, AssertionStatus::Validated);
    EXPECT_EQ(a.find(Assertion::C)->status, AssertionStatus::Validated);
    EXPECT_EQ(a.evidence["probe"]["k"], 0);
    EXPECT_EQ(a.evidence["contour"]["status"], "yes");

    const auto b = decide_weak_bibo_2d(parse_poly("1 + X1 + X2"), 16, Rational(1, 16));
    EXPECT_EQ(b.kind, VerdictKind::MemberOfAmoeba);
    EXPECT_EQ(b.find(Assertion::B)->status, AssertionStatus::Disproved);
    EXPECT_EQ(b.find(Assertion::C)->status, AssertionStatus::Disproved);

    EXPECT_THROW(decide_weak_bibo_2d(parse_poly("2 + X1"), 16, Rational(1, 4)), ArityError);
}

TEST(WeakBibo, CornerOfProductFamily) {
    // (1 - X1)(1 - X2): the origin is the corner of E_0 and lies in the contour.
    const auto v = decide_weak_bibo_2d(parse_poly("1 - X1 - X2 + X1*X2"), 16, Rational(1, 4));
    EXPECT_EQ(v.find(Assertion::B)->status, AssertionStatus::Validated);
    EXPECT_EQ(v.kind, VerdictKind::WeaklyStable);
}

TEST(StrongBibo, PositiveScalingInvariance) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 12; ++i) {
        const auto f = random_bivariate(rng, 2);
        if (!check_preconditions(f).ok()) continue;
        const auto a = decide_strong_bibo(f, 8, 3);
        const auto b = decide_strong_bibo(f * BigInt(7), 8, 3);
        EXPECT_EQ(a.kind, b.kind) << f;
        EXPECT_EQ(a.component, b.component) << f;
        EXPECT_EQ(a.k_used, b.k_used) << f;
    }
}

TEST(StrongBibo, MonotoneInThreshold) {
    StrongOptions no_shortcut;
    no_shortcut.oracle_shortcut = false;
    for (const char* text : {"3 + X1 + X2", "4 - 2*X1 - 2*X2 + X1*X2", "1 + 4*X1 + X2", "5 + X1 - 2*X2 + X1*X2"}) {
        const auto f = parse_poly(text);
        std::optional<StabilityVerdict> first;
        for (int m0 = 1; m0 <= 12; ++m0) {
            const auto v = decide_strong_bibo(f, m0, 6, no_shortcut);
            if (first) {
                EXPECT_EQ(v.kind, first->kind) << text << " M0=" << m0;
                EXPECT_EQ(v.component, first->component) << text;
            } else if (conclusive(v)) {
                first = v;
            }
        }
        EXPECT_TRUE(first.has_value()) << text;
    }
}

TEST(StrongBibo, AgreesWithShanksOracle) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> big(6, 16);
    int decided = 0;
    for (int i = 0; i < 30; ++i) {
        auto f = random_bivariate(rng, 2);
        // A heavier constant term on odd draws puts some origins inside the complement.
        if (i % 2) f.add_term({0, 0}, big(rng));
        if (!check_preconditions(f).ok()) continue;
        const auto v = decide_strong_bibo(f, 8, 4);
        if (!conclusive(v)) continue;
        ++decided;
        EXPECT_EQ(v.kind == VerdictKind::StronglyStable, shanks_oracle_2d(f)) << f;
    }
    EXPECT_GE(decided, 8);
}

TEST(StrongBibo, StableImpliesNegativeOrthantOffAmoeba) {
    for (const char* text : {"3 + X1 + X2", "4 - 2*X1 - 2*X2 + X1*X2", "6 + X1 - 2*X2 + X1*X2^2"}) {
        const auto f = parse_poly(text);
        ASSERT_EQ(decide_strong_bibo(f, 10, 6).kind, VerdictKind::StronglyStable) << text;
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b) {
                const RationalPoint x{Rational(-a, 2), Rational(-b, 2)};
                EXPECT_EQ(amoeba_membership_fiber(f, x, 128).status, MembershipResult::Status::NonMember) << text;
            }
    }
}

TEST(VerdictJson, Shape) {
    const auto j = to_json(decide_strong_bibo(parse_poly("3 + X1 + X2"), 10, 12));
    EXPECT_EQ(j["verdict"], "StronglyStable");
    EXPECT_EQ(j["k_used"], 0);
    EXPECT_EQ(j["component"], nlohmann::json::array({0, 0}));
    EXPECT_TRUE(j["assertions"].is_array());
    EXPECT_TRUE(j["resources"]["steps"].is_array());
    const auto p = to_json(decide_strong_bibo(parse_poly("X1 + X1*X2"), 10, 12));
    EXPECT_EQ(p["verdict"], "PreconditionFailed");
    EXPECT_TRUE(p["k_used"].is_null());
    EXPECT_EQ(exit_code(VerdictKind::PreconditionFailed), 4);
}
