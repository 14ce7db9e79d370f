#pragma once

// Strong and weak BIBO stability of a rational filter with denominator F, decided by locating the
// origin relative to the amoeba of F.

#include "amoeba/contour.hpp"
#include "amoeba/doubling.hpp"
#include "amoeba/lopsided.hpp"
#include "amoeba/newton.hpp"
#include "amoeba/oracle.hpp"

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace amoeba {

enum class VerdictKind { StronglyStable, UnstableInComponent, WeaklyStable, MemberOfAmoeba, Inconclusive, PreconditionFailed };

inline const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::StronglyStable: return "StronglyStable";
        case VerdictKind::UnstableInComponent: return "UnstableInComponent";
        case VerdictKind::WeaklyStable: return "WeaklyStable";
        case VerdictKind::MemberOfAmoeba: return "MemberOfAmoeba";
        case VerdictKind::Inconclusive: return "Inconclusive";
        default: return "PreconditionFailed";
    }
}

inline int exit_code(VerdictKind k) {
    switch (k) {
        case VerdictKind::StronglyStable: return 0;
        case VerdictKind::UnstableInComponent:
        case VerdictKind::MemberOfAmoeba: return 1;
        case VerdictKind::WeaklyStable: return 2;
        case VerdictKind::Inconclusive: return 3;
        default: return 4;
    }
}

enum class Assertion { A_threshold, A0, B, C };
enum class AssertionStatus { Validated, Disproved, Undetermined };

inline const char* assertion_name(Assertion a) {
    switch (a) {
        case Assertion::A_threshold: return "A_threshold";
        case Assertion::A0: return "A0";
        case Assertion::B: return "B";
        default: return "C";
    }
}

inline const char* assertion_status_name(AssertionStatus s) {
    switch (s) {
        case AssertionStatus::Validated: return "validated";
        case AssertionStatus::Disproved: return "disproved";
        default: return "undetermined";
    }
}

struct AssertionReport {
    Assertion assertion;
    AssertionStatus status;
    std::string detail;
};

struct PreconditionCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct PreconditionReport {
    std::vector<PreconditionCheck> checks;
    bool zero_in_support = false;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const PreconditionCheck& c) { return c.passed; });
    }
};

struct StabilityVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::optional<int> k_used;
    std::optional<Exponent> component;
    std::vector<AssertionReport> assertions;
    nlohmann::json evidence = nlohmann::json::object();
    nlohmann::json resources = nlohmann::json::object();
    std::string reason;

    const AssertionReport* find(Assertion a) const {
        for (const auto& r : assertions)
            if (r.assertion == a) return &r;
        return nullptr;
    }
};

inline PreconditionReport check_preconditions(const LaurentPoly& f) {
    if (f.is_zero()) throw AmoebaError("check_preconditions: F must be nonzero");
    const std::size_t n = f.nvars();
    PreconditionReport rep;
    const bool polynomial = f.is_polynomial();
    rep.checks.push_back({"support_in_orthant", polynomial, polynomial ? "" : "F has negative exponents"});
    for (std::size_t j = 0; j < n; ++j) {
        const bool free = f.min_exponent(j) == 0;
        rep.checks.push_back({"not_divisible_by_X" + std::to_string(j + 1), free,
                              free ? "" : "every term contains X" + std::to_string(j + 1)});
    }
    const std::size_t dim = newton_polytope(f).dim;
    rep.checks.push_back({"full_dimensional_newton_polytope", dim == n,
                          "dim = " + std::to_string(dim) + ", n = " + std::to_string(n)});
    rep.zero_in_support = sgn(f.coefficient(Exponent(n, 0))) != 0;
    return rep;
}

struct StrongOptions {
    DoublingLimits limits;
    /// For n <= 2, stop early once the fiber oracle certifies 0 in A_F: no G_k can then be lopsided there.
    bool oracle_shortcut = true;
    int oracle_resolution = 256;
};

struct WeakOptions {
    /// Depth of the lopsided probe at (-δ,...,-δ).
    int k_probe = 6;
    mpfr_prec_t precision_bits = 128;
    mpfr_prec_t precision_cap = 1024;
    int oracle_resolution = 256;
    DoublingLimits limits;
};

namespace detail {

inline nlohmann::json exponent_json(const Exponent& e) { return nlohmann::json(std::vector<std::int64_t>(e.begin(), e.end())); }

inline nlohmann::json membership_json(const MembershipResult& m) {
    nlohmann::json j{{"status", status_name(m.status)}, {"exact", m.exact}, {"detail", m.detail}};
    if (m.status == MembershipResult::Status::Member) {
        nlohmann::json z = nlohmann::json::array();
        for (const auto& c : m.z) z.push_back({c.real(), c.imag()});
        j["z"] = z;
        j["residual"] = m.residual;
    }
    if (m.status == MembershipResult::Status::NonMember) j["bound"] = m.bound;
    return j;
}

inline nlohmann::json contour_json(const OriginContourResult& r) {
    const char* s = r.status == OriginContourResult::Status::Yes  ? "yes"
                    : r.status == OriginContourResult::Status::No ? "no"
                                                                  : "undetermined";
    nlohmann::json j{{"status", s}, {"exact", r.exact}, {"detail", r.detail}};
    if (r.z1 && r.z2) {
        const auto a = r.z1->mid(), b = r.z2->mid();
        j["witness"] = {{static_cast<double>(a.real()), static_cast<double>(a.imag())},
                        {static_cast<double>(b.real()), static_cast<double>(b.imag())}};
    }
    if (r.gauss) {
        j["gauss"] = {r.gauss->a.re.mid(), r.gauss->a.im.mid(), r.gauss->b.re.mid(), r.gauss->b.im.mid()};
    }
    return j;
}

inline StabilityVerdict precondition_failure(const PreconditionReport& pre) {
    StabilityVerdict v;
    v.kind = VerdictKind::PreconditionFailed;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : pre.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        if (!c.passed && v.reason.empty()) v.reason = c.name;
    }
    v.evidence["preconditions"] = checks;
    return v;
}

}  // namespace detail

inline StabilityVerdict decide_strong_bibo(const LaurentPoly& f, int M0, int k_max, const StrongOptions& opt = {}) {
    if (M0 < 0) throw AmoebaError("decide_strong_bibo: M0 must be nonnegative");
    if (k_max < 0) throw AmoebaError("decide_strong_bibo: k_max must be nonnegative");
    const auto pre = check_preconditions(f);
    if (!pre.ok()) return detail::precondition_failure(pre);

    const std::size_t n = f.nvars();
    const auto delta = newton_polytope(f);
    const auto stats = polytope_stats(delta);
    const int k_required = required_doublings(Rational(BigInt(1), pow_int(BigInt(2), static_cast<unsigned long>(M0))), stats, n);
    const int k_limit = pre.zero_in_support ? std::min(k_max, k_required) : 0;

    StabilityVerdict v;
    v.evidence["M0"] = M0;
    v.evidence["k_max"] = k_max;
    v.evidence["k_required"] = k_required;
    v.evidence["zero_in_support"] = pre.zero_in_support;
    nlohmann::json steps = nlohmann::json::array();

    DoublingSequence seq(f, opt.limits);
    int k_reached = 0;
    bool shortcut_tried = false;
    for (int k = 0; k <= k_limit; ++k) {
        if (k > 0) {
            if (!shortcut_tried && opt.oracle_shortcut && n <= 2 && pre.zero_in_support) {
                shortcut_tried = true;
                const auto m = amoeba_membership_fiber(f, RationalPoint(n, Rational(0)), opt.oracle_resolution);
                if (m.status == MembershipResult::Status::Member) {
                    v.kind = VerdictKind::Inconclusive;
                    v.reason = "origin in amoeba";
                    v.evidence["origin_membership"] = detail::membership_json(m);
                    v.evidence["k_reached"] = k_reached;
                    v.resources["steps"] = steps;
                    v.assertions.push_back({Assertion::A_threshold, AssertionStatus::Disproved,
                                            "the origin lies in A_F, so no threshold is sufficient"});
                    return v;
                }
            }
            try {
                seq.step();
            } catch (const ResourceError& e) {
                v.kind = VerdictKind::Inconclusive;
                v.reason = "resources";
                v.evidence["k_reached"] = k_reached;
                v.evidence["resource_error"] = e.what();
                v.resources["steps"] = steps;
                v.assertions.push_back({Assertion::A_threshold, AssertionStatus::Undetermined, e.what()});
                return v;
            }
        }
        k_reached = k;
        const auto& g = seq.current();
        const auto out = is_lopsided_at_origin(g);
        steps.push_back({{"k", k}, {"terms", g.size()}, {"coeff_bits", g.max_coeff_bits()}});
        if (!out.lopsided) continue;
        const auto alpha = classify_component(*out.winner, k, n, delta);
        if (!alpha) continue;

        v.k_used = k;
        v.component = *alpha;
        v.evidence["winner"] = detail::exponent_json(*out.winner);
        v.evidence["margin"] = out.exact_margin->get_str();
        v.evidence["k_reached"] = k;
        v.resources["steps"] = steps;
        const std::string where = "origin lopsided for G_" + std::to_string(k);
        v.assertions.push_back({Assertion::A_threshold, AssertionStatus::Validated, where});
        if (std::all_of(alpha->begin(), alpha->end(), [](std::int64_t a) { return a == 0; })) {
            v.kind = VerdictKind::StronglyStable;
            v.assertions.push_back({Assertion::A0, AssertionStatus::Validated, "winner classifies to component 0"});
        } else {
            v.kind = VerdictKind::UnstableInComponent;
            v.assertions.push_back({Assertion::A0, AssertionStatus::Disproved, "winner classifies to a nonzero component"});
        }
        return v;
    }

    v.kind = VerdictKind::Inconclusive;
    v.evidence["k_reached"] = k_reached;
    v.resources["steps"] = steps;
    if (!pre.zero_in_support) {
        // 0 is not a lattice point of Δ, so E_0 does not exist.
        v.kind = VerdictKind::UnstableInComponent;
        v.reason = "constant term absent";
        v.assertions.push_back({Assertion::A0, AssertionStatus::Disproved, "0 is not in Supp F"});
    } else if (k_limit == k_required) {
        v.reason = "threshold";
        v.assertions.push_back({Assertion::A_threshold, AssertionStatus::Disproved,
                                "not lopsided up to the required depth: 0 lies in A_F or within 2^-M0 of it"});
    } else {
        v.reason = "k_max";
        v.assertions.push_back({Assertion::A_threshold, AssertionStatus::Undetermined,
                                "k_max reached before the required depth"});
    }
    return v;
}

inline StabilityVerdict decide_weak_bibo_2d(const LaurentPoly& f, int M0, const Rational& delta, const WeakOptions& opt = {}) {
    if (f.nvars() != 2) throw ArityError("decide_weak_bibo_2d: F must be bivariate");
    if (sgn(delta) <= 0) throw AmoebaError("decide_weak_bibo_2d: δ must be positive");
    const auto pre = check_preconditions(f);
    if (!pre.ok()) return detail::precondition_failure(pre);

    StabilityVerdict v;
    v.kind = VerdictKind::Inconclusive;
    v.evidence["M0"] = M0;
    v.evidence["delta"] = to_string(delta);

    const auto contour = origin_in_contour(f, opt.precision_cap);
    v.evidence["contour"] = detail::contour_json(contour);
    const auto origin = amoeba_membership_fiber(f, RationalPoint(2, Rational(0)), opt.oracle_resolution);
    v.evidence["origin_membership"] = detail::membership_json(origin);

    if (contour.status == OriginContourResult::Status::Undetermined) {
        v.reason = "contour undetermined";
        v.assertions.push_back({Assertion::B, AssertionStatus::Undetermined, contour.detail});
        return v;
    }
    if (contour.status == OriginContourResult::Status::No) {
        v.assertions.push_back({Assertion::B, AssertionStatus::Disproved, "the origin is not in the contour"});
        v.assertions.push_back({Assertion::C, AssertionStatus::Disproved, "disproving B disproves C"});
        if (origin.status == MembershipResult::Status::Member) {
            v.kind = VerdictKind::MemberOfAmoeba;
            v.reason = "origin in amoeba";
        } else {
            v.reason = "origin off the contour";
        }
        return v;
    }
    v.assertions.push_back({Assertion::B, AssertionStatus::Validated, "the origin is in the contour"});

    // Probe at x = (-δ,-δ): the winner of G_k at 2^k x classifies the component.
    nlohmann::json probe{{"point", {to_string(-delta), to_string(-delta)}}};
    std::optional<Exponent> probe_alpha;
    try {
        const auto delta_poly = newton_polytope(f);
        DoublingSequence seq(f, opt.limits);
        for (int k = 0; k <= opt.k_probe; ++k) {
            if (k > 0) seq.step();
            const Rational xk = Rational(-delta * Rational(pow_int(BigInt(2), static_cast<unsigned long>(k))));
            const auto out = lopsided_membership(seq.current(), {xk, xk}, opt.precision_bits, opt.precision_cap);
            probe["k_reached"] = k;
            if (!out.lopsided) continue;
            if (const auto alpha = classify_component(*out.winner, k, 2, delta_poly)) {
                probe_alpha = alpha;
                probe["k"] = k;
                probe["component"] = detail::exponent_json(*alpha);
                if (out.margin) probe["margin_lower"] = out.margin->lower_double();
                break;
            }
        }
    } catch (const UndeterminedError& e) {
        probe["error"] = e.what();
    } catch (const ResourceError& e) {
        probe["error"] = e.what();
    }
    v.evidence["probe"] = probe;

    const bool probe_in_e0 = probe_alpha && (*probe_alpha)[0] == 0 && (*probe_alpha)[1] == 0;
    if (origin.status == MembershipResult::Status::NonMember) {
        v.reason = "origin off the amoeba";
        v.assertions.push_back({Assertion::C, AssertionStatus::Disproved, "the origin is not in A_F"});
    } else if (probe_in_e0 && origin.status == MembershipResult::Status::Member) {
        v.kind = VerdictKind::WeaklyStable;
        v.component = Exponent{0, 0};
        v.assertions.push_back({Assertion::C, AssertionStatus::Validated,
                                "probe lies in E_0 and the origin is certified in A_F"});
    } else {
        v.reason = "boundary evidence incomplete";
        v.assertions.push_back({Assertion::C, AssertionStatus::Undetermined,
                                probe_in_e0 ? "origin membership undetermined" : "probe not certified in E_0"});
    }
    return v;
}

inline nlohmann::json to_json(const StabilityVerdict& v) {
    nlohmann::json j;
    j["verdict"] = verdict_name(v.kind);
    j["k_used"] = v.k_used ? nlohmann::json(*v.k_used) : nlohmann::json(nullptr);
    j["component"] = v.component ? detail::exponent_json(*v.component) : nlohmann::json(nullptr);
    nlohmann::json as = nlohmann::json::array();
    for (const auto& a : v.assertions)
        as.push_back({{"assertion", assertion_name(a.assertion)}, {"status", assertion_status_name(a.status)}, {"detail", a.detail}});
    j["assertions"] = as;
    j["evidence"] = v.evidence;
    if (!v.reason.empty()) j["evidence"]["reason"] = v.reason;
    j["resources"] = v.resources;
    return j;
}

}  // namespace amoeba
