// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "amoeba/amoeba.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace amoeba;

namespace {

struct Check {
    std::ostringstream log;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << "    failed: " << what << "\n";
        }
    }
};

int failures = 0;

void run(int id, const std::string& name, double budget_s, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(s < budget_s, "runtime " + std::to_string(s) + " s exceeds " + std::to_string(budget_s) + " s");
    std::cout << (c.ok ? "PASS" : "FAIL") << "  [" << id << "] " << name << "  (" << std::fixed << std::setprecision(2) << s
              << " s)\n"
              << c.log.str();
    std::cout.unsetf(std::ios::fixed);
    if (!c.ok) ++failures;
}

// Bivariate polynomials of total degree <= 3: one to five random monomials with coefficients in
// [-5, 5] and a nonzero constant term in [-5, 5].
std::vector<LaurentPoly> random_corpus(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cd(-5, 5), nz(1, 5), sign(0, 1), nterms(1, 5), ed(0, 3);
    std::vector<LaurentPoly> out;
    while (out.size() < count) {
        LaurentPoly f(2);
        for (int t = nterms(rng); t > 0;) {
            const int i = ed(rng), j = ed(rng);
            if (i + j == 0 || i + j > 3) continue;
            f.add_term({i, j}, cd(rng));
            --t;
        }
        f.add_term({0, 0}, sign(rng) ? nz(rng) : -nz(rng));
        out.push_back(f);
    }
    return out;
}

double distance_to_origin(const ContourSample& s) { return std::hypot(s.x1.mid(), s.x2.mid()); }

bool is_member(const MembershipResult& m) { return m.status == MembershipResult::Status::Member; }

}  // namespace

int main() {
    run(1, "stability verdicts on the example family", 5.0, [](Check& c) {
        auto timed = [&](const std::string& name, const std::function<void()>& f) {
            const auto t0 = std::chrono::steady_clock::now();
            f();
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            c.expect(s < 1.0, name + " took " + std::to_string(s) + " s");
        };
        timed("3+X1+X2", [&] {
            const auto v = decide_strong_bibo(parse_poly("3 + X1 + X2"), 10, 12);
            c.expect(v.kind == VerdictKind::StronglyStable && v.k_used == 0, "3+X1+X2 is StronglyStable at k=0");
        });
        timed("1+4X1+X2", [&] {
            const auto v = decide_strong_bibo(parse_poly("1 + 4*X1 + X2"), 10, 12);
            c.expect(v.kind == VerdictKind::UnstableInComponent && v.component == Exponent{1, 0},
                     "1+4X1+X2 is UnstableInComponent (1,0)");
        });
        timed("X1+X2+3X1X2", [&] {
            const auto f = parse_poly("X1 + X2 + 3*X1*X2");
            c.expect(!check_preconditions(f).zero_in_support, "0 not in Supp F");
            const auto v = decide_strong_bibo(f, 10, 12);
            c.expect(v.kind == VerdictKind::UnstableInComponent && exit_code(v.kind) == 1, "X1+X2+3X1X2 is not stable");
        });
        timed("1+X1+X2", [&] {
            const auto f = parse_poly("1 + X1 + X2");
            const auto v = decide_strong_bibo(f, 6, 12);
            c.expect(v.kind == VerdictKind::Inconclusive, "1+X1+X2 strong check is Inconclusive");
            const auto w = decide_weak_bibo_2d(f, 6, Rational(1, 16));
            c.expect(w.kind == VerdictKind::MemberOfAmoeba, "1+X1+X2 is not weakly stable");
        });
        timed("2+X1+X2", [&] {
            const auto f = parse_poly("2 + X1 + X2");
            const auto v = decide_strong_bibo(f, 16, 12);
            c.expect(v.kind == VerdictKind::Inconclusive, "2+X1+X2 strong check is Inconclusive");
            const auto w = decide_weak_bibo_2d(f, 16, Rational(1, 4));
            c.expect(w.kind == VerdictKind::WeaklyStable, "2+X1+X2 is WeaklyStable");
        });
    });

    run(2, "doubling depth of (2-X1)(2-X2)", 5.0, [](Check& c) {
        const auto f = parse_poly("4 - 2*X1 - 2*X2 + X1*X2");
        DoublingSequence seq(f);
        c.expect(!is_lopsided_at_origin(seq.current()).lopsided, "not lopsided at k=0");
        c.expect(!is_lopsided_at_origin(seq.step()).lopsided, "not lopsided at k=1");
        const auto out = is_lopsided_at_origin(seq.step());
        c.expect(out.lopsided && out.winner == Exponent{0, 0}, "lopsided at k=2 with winner (0,0)");
        c.expect(seq.current().coefficient({0, 0}) == pow_int(BigInt(2), 32), "winner coefficient 2^32");
        c.expect(out.exact_margin && *out.exact_margin == BigInt(1614177151), "margin 2^33 - 17^8 = 1614177151");
        const auto k = required_doublings(Interval::ln2(256), polytope_stats(newton_polytope(f)), 2);
        c.expect(k == 5, "required_doublings(ln 2) = 5, got " + std::to_string(k));
    });

    run(3, "strong verdicts agree with the exact bidisk oracle", 120.0, [](Check& c) {
        // k_max = 5 keeps G_k within ~10^4 terms for degree-3 inputs.
        int conclusive = 0, stable = 0, skipped = 0, disagreements = 0;
        for (const auto& f : random_corpus(50, 2024)) {
            if (!check_preconditions(f).ok()) {
                ++skipped;
                continue;
            }
            const auto v = decide_strong_bibo(f, 16, 5);
            if (v.kind != VerdictKind::StronglyStable && v.kind != VerdictKind::UnstableInComponent) continue;
            ++conclusive;
            const bool s = v.kind == VerdictKind::StronglyStable;
            stable += s;
            if (s != shanks_oracle_2d(f)) {
                ++disagreements;
                c.expect(false, "disagreement on " + to_text(f));
            }
        }
        c.log << "    " << conclusive << " conclusive (" << stable << " stable), " << skipped
              << " failed preconditions, " << disagreements << " disagreements\n";
        c.expect(conclusive > 0, "at least one conclusive verdict");
    });

    run(4, "fiber-certified members are never lopsided", 60.0, [](Check& c) {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> xd(-32, 32);
        const std::vector<LaurentPoly> family{parse_poly("2 + X1 + X2"), parse_poly("3 + X1 + X2"), parse_poly("1 + X1 + X2"),
                                              parse_poly("1 + X1 + X2 + X1*X2"), parse_poly("4 - 2*X1 - 2*X2 + X1*X2"),
                                              parse_poly("1 + 4*X1 + X2")};
        int members = 0, lopsided = 0;
        for (int attempt = 0; attempt < 5000 && members < 100; ++attempt) {
            const auto& f = family[attempt % family.size()];
            const RationalPoint x{Rational(xd(rng), 16), Rational(xd(rng), 16)};
            if (!is_member(amoeba_membership_fiber(f, x, 128))) continue;
            ++members;
            try {
                if (lopsided_membership(f, x).lopsided) {
                    ++lopsided;
                    c.expect(false, to_text(f) + " lopsided at a member point");
                }
            } catch (const UndeterminedError&) {
            }
        }
        c.log << "    " << members << " member points, " << lopsided << " lopsided\n";
        c.expect(members == 100, "100 certified member points");
    });

    run(5, "contour of the simplex and product families", 60.0, [](Check& c) {
        const auto yes = origin_in_contour(parse_poly("2 + X1 + X2"));
        c.expect(yes.status == OriginContourResult::Status::Yes, "origin in the contour of 2+X1+X2");
        const auto minus_one = Interval::from_int(-1, 64);
        const auto encloses = [&](const std::optional<RootBox>& z) {
            return z && z->enclosure().re.contains(minus_one) && z->enclosure().im.contains_zero();
        };
        c.expect(encloses(yes.z1) && encloses(yes.z2), "witness encloses (-1,-1)");

        const auto a = trace_contour(parse_poly("2 + X1 + X2"), uniform_grid(Rational(-4), Rational(4), 33));
        double best = 1e300;
        for (const auto& s : a) best = std::min(best, distance_to_origin(s));
        c.expect(best < 1e-3, "2+X1+X2 contour passes within 1e-3 of the origin");

        const auto b = trace_contour(parse_poly("3 + X1 + X2"), uniform_grid(Rational(-8), Rational(8), 65));
        c.expect(!b.empty(), "3+X1+X2 contour is nonempty");
        for (const auto& s : b) c.expect(distance_to_origin(s) >= 0.572 - 1e-3, "3+X1+X2 sample too close to the origin");

        const double l2 = std::log(2.0);
        const auto p = trace_contour(parse_poly("4 - 2*X1 - 2*X2 + X1*X2"), uniform_grid(Rational(-4), Rational(4), 33));
        c.expect(!p.empty(), "(2-X1)(2-X2) contour is nonempty");
        for (const auto& s : p)
            c.expect(std::min(std::abs(s.x1.mid() - l2), std::abs(s.x2.mid() - l2)) < 1e-6, "sample off the ln 2 lines");
    });

    run(6, "Ronkin values and properties", 60.0, [](Check& c) {
        const auto g = parse_poly("2 - X1");
        for (double x : {0.0, 2.0}) {
            const std::vector<double> p{x};
            const double v = ronkin_quadrature(g, std::span<const double>(p), 256).value;
            c.expect(std::abs(v - std::max(std::log(2.0), x)) < 1e-6, "Jensen value at x=" + std::to_string(x));
        }
        const auto d = ronkin_via_doubling(g, {Rational(0)}, 4);
        c.expect(std::abs(d.value - std::log(65535.0) / 16) < 1e-12, "doubling value (1/16) ln(2^16 - 1)");
        c.expect(std::abs(d.value - std::log(2.0)) < 1e-4, "doubling value within 1e-4 of ln 2");
        const std::vector<double> q{-3, -3};
        const double r = ronkin_quadrature(parse_poly("4 + X1 + X2"), std::span<const double>(q), 256).value;
        c.expect(std::abs(r - std::log(4.0)) < 1e-3, "R at (-3,-3) for 4+X1+X2 is ln 4");

        // Midpoint convexity.
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> xd(-2.5, 2.5);
        for (const char* text : {"3 + X1 + X2", "1 + X1 + X2 + X1*X2", "2 - X1 + 3*X2^2 + X1*X2"}) {
            const auto f = parse_poly(text);
            for (int i = 0; i < 20; ++i) {
                const std::vector<double> a{xd(rng), xd(rng)}, b{xd(rng), xd(rng)}, m{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
                const auto ra = ronkin_quadrature(f, std::span<const double>(a), 128);
                const auto rb = ronkin_quadrature(f, std::span<const double>(b), 128);
                const auto rm = ronkin_quadrature(f, std::span<const double>(m), 128);
                const double tol = 2 * std::max({ra.error, rb.error, rm.error}) + 1e-9;
                c.expect(rm.value <= (ra.value + rb.value) / 2 + tol, std::string("convexity for ") + text);
            }
        }

        // Second differences vanish along segments inside one certified component.
        const auto f = parse_poly("3 + X1 + X2");
        const auto delta = newton_polytope(f);
        std::uniform_int_distribution<int> id(-40, 40);
        int checked = 0;
        for (int i = 0; i < 80 && checked < 15; ++i) {
            const RationalPoint p{Rational(id(rng), 8), Rational(id(rng), 8)};
            const RationalPoint s{Rational(id(rng), 80), Rational(id(rng), 80)};
            const RationalPoint p1{Rational(p[0] + s[0]), Rational(p[1] + s[1])};
            const RationalPoint p2{Rational(p[0] + 2 * s[0]), Rational(p[1] + 2 * s[1])};
            const auto c0 = certify_component(f, p, 3, delta), c1 = certify_component(f, p1, 3, delta),
                       c2 = certify_component(f, p2, 3, delta);
            if (!c0 || !c1 || !c2 || c0->second != c1->second || c1->second != c2->second) continue;
            const auto a = ronkin_quadrature(f, p, 128), b = ronkin_quadrature(f, p1, 128), e = ronkin_quadrature(f, p2, 128);
            c.expect(std::abs(a.value - 2 * b.value + e.value) <= 3 * std::max({a.error, b.error, e.error}) + 1e-12,
                     "affinity on a certified component");
            ++checked;
        }
        c.expect(checked >= 10, "at least 10 affinity checks");
    });

    run(7, "Newton polytope constants and recession cones", 60.0, [](Check& c) {
        const auto simplex = polytope_stats(newton_polytope(parse_poly("1 + X1 + X2")));
        c.expect(simplex.c_F == 1 && simplex.d_F == 3, "unit simplex (c_F, d_F) = (1, 3)");
        const auto square = polytope_stats(newton_polytope(parse_poly("1 + X1 + X2 + X1*X2")));
        c.expect(square.c_F == 1 && square.d_F == 4, "unit square (c_F, d_F) = (1, 4)");
        int checked = 0;
        for (const auto& f : random_corpus(50, 2024)) {
            const auto delta = newton_polytope(f);
            if (delta.dim != 2) continue;
            c.expect(recession_cone(delta, Exponent{0, 0}).contains_negative_orthant(), "cone of 0 for " + to_text(f));
            ++checked;
        }
        c.log << "    " << checked << " corpus polytopes checked\n";
    });

    run(8, "fiber membership is invariant under doubling", 120.0, [](Check& c) {
        std::mt19937_64 rng(8);
        std::uniform_int_distribution<int> xd(-12, 12);
        const std::vector<LaurentPoly> family{parse_poly("2 + X1 + X2"), parse_poly("3 + X1 + X2"),
                                              parse_poly("1 + X1 + X2 + X1*X2"), parse_poly("1 + 4*X1 + X2")};
        std::vector<std::vector<LaurentPoly>> iterates;
        for (const auto& f : family) {
            DoublingSequence s(f);
            std::vector<LaurentPoly> its{f};
            for (int k = 1; k <= 3; ++k) its.push_back(s.step());
            iterates.push_back(std::move(its));
        }
        int compared = 0, members = 0;
        for (int i = 0; i < 20; ++i) {
            const auto& its = iterates[i % iterates.size()];
            const RationalPoint x{Rational(xd(rng), 8), Rational(xd(rng), 8)};
            const auto base = amoeba_membership_fiber(its[0], x, 128);
            if (base.status == MembershipResult::Status::Undetermined) continue;
            members += is_member(base);
            for (int k = 1; k <= 3; ++k) {
                const Rational s(pow_int(BigInt(2), k));
                const auto m = amoeba_membership_fiber(its[k], {Rational(x[0] * s), Rational(x[1] * s)}, 128);
                if (m.status == MembershipResult::Status::Undetermined) continue;
                ++compared;
                c.expect(m.status == base.status, "membership differs at k=" + std::to_string(k) + " for " + to_text(its[0]));
            }
        }
        c.log << "    " << compared << " comparisons, " << members << " member base points\n";
        c.expect(compared >= 30, "at least 30 decided comparisons");
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}
