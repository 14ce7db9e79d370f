#include "amoeba/amoeba.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace amoeba;
using nlohmann::json;

namespace {

constexpr int kExitIo = 64;

struct Global {
    std::string input;
    std::string poly_text;
    std::string out;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    int precision_bits = 128;
    std::string format = "text";
};

struct Input {
    LaurentPoly poly{1};
    BigInt scale = 1;
    std::string sha256;
};

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

Input load_input(const Global& g, std::size_t min_nvars) {
    std::string bytes;
    Input in;
    if (!g.poly_text.empty()) {
        bytes = g.poly_text;
        in.poly = parse_poly(bytes, min_nvars);
    } else {
        if (g.input.empty()) throw AmoebaError("no input: pass --input FILE or --poly TEXT");
        std::ifstream f(g.input, std::ios::binary);
        if (!f) throw AmoebaError("cannot open " + g.input);
        std::stringstream buf;
        buf << f.rdbuf();
        bytes = buf.str();
        auto sp = read_poly_file(g.input, min_nvars);
        in.poly = std::move(sp.poly);
        in.scale = sp.scale;
    }
    in.sha256 = sha256_hex(bytes);
    if (in.poly.is_zero()) throw AmoebaError("the input polynomial is zero");
    return in;
}

RationalPoint parse_point(const std::string& text, std::size_t n) {
    RationalPoint x;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) x.push_back(parse_rational(item));
    if (x.size() != n) throw ArityError("--point needs " + std::to_string(n) + " coordinates");
    return x;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw AmoebaError("expected a range a:b, got " + text);
    return {parse_rational(text.substr(0, colon)).get_d(), parse_rational(text.substr(colon + 1)).get_d()};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw AmoebaError("cannot write " + path);
    return os;
}

json base_report(const Global& g, const Input& in) {
    return {{"version", kVersion},
            {"input_sha256", in.sha256},
            {"input_scale", in.scale.get_str()},
            {"options",
             {{"threads", g.threads}, {"seed", g.seed}, {"precision_bits", g.precision_bits}, {"format", g.format}}}};
}

void emit(const Global& g, const json& doc, const std::string& text) {
    if (g.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amoeba-based BIBO stability analysis of n-D rational filters"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string("amoeba ") + kVersion);

    Global g;
    app.add_option("--input", g.input, "Polynomial file (JSON or text)");
    app.add_option("--poly", g.poly_text, "Polynomial given inline, e.g. \"3 + X1 + X2\"");
    app.add_option("--out", g.out, "Output path");
    app.add_option("--threads", g.threads, "Worker cap")->check(CLI::Range(1u, 256u));
    app.add_option("--seed", g.seed, "Seed for randomized elements");
    app.add_option("--precision-bits", g.precision_bits, "Working precision")->check(CLI::Range(32, 65536));
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}));

    // check
    auto* check = app.add_subcommand("check", "Decide strong (and optionally weak) BIBO stability");
    int M0 = 16, k_max = 12, k_probe = 6;
    std::string delta_text = "1/16";
    bool weak = false, assume_coprime = false, no_shortcut = false;
    check->add_option("--M0", M0, "Threshold exponent: distance 2^-M0")->check(CLI::Range(0, 4096));
    check->add_option("--k-max", k_max, "Maximal doubling depth")->check(CLI::Range(0, 64));
    check->add_option("--delta", delta_text, "Probe offset δ for the weak check");
    check->add_option("--k-probe", k_probe, "Doubling depth of the weak probe")->check(CLI::Range(0, 64));
    check->add_flag("--weak", weak, "Run the weak check (n = 2) when the strong check is inconclusive");
    check->add_flag("--assume-coprime", assume_coprime, "Assert that numerator and denominator are coprime");
    check->add_flag("--no-oracle-shortcut", no_shortcut, "Do not stop early when the origin is certified in A_F");

    // contour
    auto* contour = app.add_subcommand("contour", "Trace the contour of a bivariate amoeba");
    std::string u_range = "-4:4", charts = "both";
    int u_samples = 65, refine = 2;
    bool literal = false;
    contour->add_option("--u-range", u_range, "Parameter range a:b");
    contour->add_option("--u-samples", u_samples, "Grid size")->check(CLI::Range(2, 1 << 20));
    contour->add_option("--charts", charts, "Charts to trace")->check(CLI::IsMember({"both", "u"}));
    contour->add_option("--refine", refine, "Bisection levels at sample-count changes")->check(CLI::Range(0, 16));
    contour->add_flag("--literal-pencil", literal, "Use the literal pencil u X1 dF/dX1 - X2 dF/dX2");

    // raster
    auto* raster = app.add_subcommand("raster", "Laplacian of the Ronkin function on a grid (PGM)");
    std::string bbox_text = "-3:3,-3:3";
    int res = 128, raster_grid = 64;
    raster->add_option("--bbox", bbox_text, "x1min:x1max,x2min:x2max");
    raster->add_option("--res", res, "Pixels per side")->check(CLI::Range(1, 4096));
    raster->add_option("--grid", raster_grid, "Quadrature nodes per dimension")->check(CLI::Range(4, 1 << 14));

    // ronkin
    auto* ronkin = app.add_subcommand("ronkin", "Estimate the Ronkin function at a point");
    std::string point_text, method = "quad";
    int ronkin_grid = 256, ronkin_k = 6;
    ronkin->add_option("--point", point_text, "Comma-separated rationals")->required();
    ronkin->add_option("--method", method, "quad or doubling")->check(CLI::IsMember({"quad", "doubling"}));
    ronkin->add_option("--grid", ronkin_grid, "Nodes per dimension")->check(CLI::Range(4, 1 << 20));
    ronkin->add_option("--k", ronkin_k, "Doubling depth")->check(CLI::Range(0, 64));

    // doubling
    auto* doubling = app.add_subcommand("doubling", "Iterated cyclic resultant G_k");
    int doubling_k = 1;
    doubling->add_option("--k", doubling_k, "Depth")->check(CLI::Range(0, 64));

    // polytope
    auto* polytope = app.add_subcommand("polytope", "Newton polytope and its constants c_F, d_F");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Independent oracles");
    oracle->require_subcommand(1);
    auto* member = oracle->add_subcommand("member", "Fiber membership of a point in A_F");
    std::string member_point = "0,0";
    int resolution = 512;
    member->add_option("--point", member_point, "Comma-separated rationals");
    member->add_option("--resolution", resolution, "Phase samples per dimension")->check(CLI::Range(8, 1 << 16));
    auto* shanks = oracle->add_subcommand("shanks2d", "Exact bidisk nonvanishing for n = 2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitIo;
    }

    try {
        if (check->parsed()) {
            const Input in = load_input(g, 1);
            const Rational delta = parse_rational(delta_text);
            StrongOptions sopt;
            sopt.limits.threads = g.threads;
            sopt.oracle_shortcut = !no_shortcut;
            auto v = decide_strong_bibo(in.poly, M0, k_max, sopt);
            json strong;
            if (weak && v.kind == VerdictKind::Inconclusive && in.poly.nvars() == 2) {
                strong = to_json(v);
                WeakOptions wopt;
                wopt.k_probe = k_probe;
                wopt.precision_bits = g.precision_bits;
                wopt.precision_cap = std::max(1024, g.precision_bits * 8);
                wopt.limits.threads = g.threads;
                v = decide_weak_bibo_2d(in.poly, M0, delta, wopt);
            }
            json doc = to_json(v);
            if (!strong.is_null()) doc["evidence"]["strong"] = strong;
            const json base = base_report(g, in);
            doc.update(base);
            doc["options"].update({{"M0", M0},
                                   {"k_max", k_max},
                                   {"delta", to_string(delta)},
                                   {"k_probe", k_probe},
                                   {"weak", weak},
                                   {"assume_coprime", assume_coprime},
                                   {"oracle_shortcut", !no_shortcut}});
            if (!assume_coprime) doc["evidence"]["coprimality"] = "not checked; the verdict concerns the denominator only";
            std::ostringstream text;
            text << "verdict: " << verdict_name(v.kind);
            if (v.k_used) text << "  k_used: " << *v.k_used;
            if (v.component) text << "  component: " << detail::exponent_json(*v.component).dump();
            if (!v.reason.empty()) text << "  reason: " << v.reason;
            text << "\n";
            for (const auto& a : v.assertions)
                text << "  " << assertion_name(a.assertion) << ": " << assertion_status_name(a.status) << " (" << a.detail
                     << ")\n";
            if (!g.out.empty()) open_out(g.out) << doc.dump(2) << "\n";
            emit(g, doc, text.str());
            return exit_code(v.kind);
        }

        if (contour->parsed()) {
            const Input in = load_input(g, 2);
            parse_range(u_range);
            TraceOptions opt;
            opt.precision_bits = g.precision_bits;
            opt.scaled = !literal;
            opt.both_charts = charts == "both";
            opt.refine_levels = refine;
            const auto lo = parse_rational(u_range.substr(0, u_range.find(':')));
            const auto hi = parse_rational(u_range.substr(u_range.find(':') + 1));
            if (!(lo < hi)) throw AmoebaError("--u-range must be increasing");
            const auto samples = trace_contour(in.poly, uniform_grid(lo, hi, u_samples), opt);
            std::ostringstream csv;
            csv << "chart,u,re_z1,im_z1,re_z2,im_z2,x1,x2\n";
            for (const auto& s : samples) {
                const auto z1 = s.z1.mid(), z2 = s.z2.mid();
                csv << chart_name(s.chart) << ',' << to_string(s.u) << ',' << fmt(static_cast<double>(z1.real())) << ','
                    << fmt(static_cast<double>(z1.imag())) << ',' << fmt(static_cast<double>(z2.real())) << ','
                    << fmt(static_cast<double>(z2.imag())) << ',' << fmt(s.x1.mid()) << ',' << fmt(s.x2.mid()) << '\n';
            }
            const std::string path = g.out.empty() ? "contour.csv" : g.out;
            open_out(path) << csv.str();
            json doc = base_report(g, in);
            doc["samples"] = samples.size();
            doc["out"] = path;
            doc["options"].update({{"u_range", u_range}, {"u_samples", u_samples}, {"charts", charts}, {"literal_pencil", literal}});
            emit(g, doc, std::to_string(samples.size()) + " samples written to " + path + "\n");
            return 0;
        }

        if (raster->parsed()) {
            const Input in = load_input(g, 2);
            const auto comma = bbox_text.find(',');
            if (comma == std::string::npos) throw AmoebaError("--bbox expects x1min:x1max,x2min:x2max");
            const auto [x1a, x1b] = parse_range(bbox_text.substr(0, comma));
            const auto [x2a, x2b] = parse_range(bbox_text.substr(comma + 1));
            const BoundingBox box{x1a, x1b, x2a, x2b};
            const auto r = laplacian_raster(in.poly, box, res, raster_grid, g.threads);
            const std::string path = g.out.empty() ? "field.pgm" : g.out;
            auto os = open_out(path);
            const auto scale = write_pgm(os, r);
            json doc = base_report(g, in);
            doc["bbox"] = {x1a, x1b, x2a, x2b};
            doc["resolution"] = res;
            doc["grid"] = raster_grid;
            doc["value_min"] = scale.min;
            doc["value_max"] = scale.max;
            doc["out"] = path;
            open_out(path + ".json") << doc.dump(2) << "\n";
            emit(g, doc, "raster written to " + path + " (scale " + fmt(scale.min) + " .. " + fmt(scale.max) + ")\n");
            return 0;
        }

        if (ronkin->parsed()) {
            const Input in = load_input(g, 1);
            const auto x = parse_point(point_text, in.poly.nvars());
            RonkinEstimate e;
            if (method == "quad") {
                e = ronkin_quadrature(in.poly, x, ronkin_grid);
            } else {
                DoublingLimits lim;
                lim.threads = g.threads;
                e = ronkin_via_doubling(in.poly, x, ronkin_k, std::max(8192, g.precision_bits), lim);
            }
            json doc = base_report(g, in);
            doc["point"] = point_text;
            doc["method"] = method_name(e.method);
            doc["value"] = e.value;
            doc["error"] = e.error;
            doc["samples_or_k"] = e.samples_or_k;
            doc["jittered"] = e.jittered;
            if (!g.out.empty()) open_out(g.out) << doc.dump(2) << "\n";
            emit(g, doc, "R_F(" + point_text + ") = " + fmt(e.value) + " ± " + fmt(e.error) + " (" + method_name(e.method) + ")\n");
            return 0;
        }

        if (doubling->parsed()) {
            const Input in = load_input(g, 1);
            DoublingLimits lim;
            lim.threads = g.threads;
            const auto seq = cyclic_resultant(in.poly, doubling_k, lim);
            const json poly = to_json(seq.current());
            const std::string path = g.out.empty() ? "G.json" : g.out;
            open_out(path) << poly.dump(2) << "\n";
            json doc = base_report(g, in);
            doc["k"] = doubling_k;
            doc["terms"] = seq.current().size();
            doc["coeff_bits"] = seq.coeff_bits();
            doc["out"] = path;
            emit(g, doc,
                 "G_" + std::to_string(doubling_k) + ": " + std::to_string(seq.current().size()) + " terms, " +
                     std::to_string(seq.coeff_bits()) + "-bit coefficients, written to " + path + "\n");
            return 0;
        }

        if (polytope->parsed()) {
            const Input in = load_input(g, 1);
            const auto delta = newton_polytope(in.poly);
            json doc{{"dim", delta.dim}, {"vertices", delta.vertices}};
            if (delta.dim == in.poly.nvars()) {
                const auto st = polytope_stats(delta);
                doc["c_F"] = st.c_F.get_str();
                doc["d_F"] = to_string(st.d_F);
                doc["volume"] = to_string(st.volume);
            }
            if (!g.out.empty()) open_out(g.out) << doc.dump(2) << "\n";
            std::cout << doc.dump(g.format == "json" ? 2 : -1) << "\n";
            return 0;
        }

        if (member->parsed()) {
            const Input in = load_input(g, 1);
            const auto x = parse_point(member_point, in.poly.nvars());
            const auto m = amoeba_membership_fiber(in.poly, x, resolution);
            json doc = base_report(g, in);
            doc["point"] = member_point;
            doc["membership"] = detail::membership_json(m);
            emit(g, doc, std::string(status_name(m.status)) + (m.detail.empty() ? "" : " (" + m.detail + ")") + "\n");
            return m.status == MembershipResult::Status::Member ? 0 : m.status == MembershipResult::Status::NonMember ? 1 : 3;
        }

        if (shanks->parsed()) {
            const Input in = load_input(g, 2);
            const bool stable = shanks_oracle_2d(in.poly);
            json doc = base_report(g, in);
            doc["nonvanishing_on_closed_bidisk"] = stable;
            emit(g, doc, stable ? "nonvanishing on the closed unit bidisk\n" : "vanishes on the closed unit bidisk\n");
            return stable ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitIo;
}
