// omega-cloud command line: forward clouds, reconstruction, round-trip
// checks, SVG figures and random polygons.

#include "omegacloud/error.hpp"
#include "omegacloud/io.hpp"
#include "omegacloud/oracle.hpp"
#include "omegacloud/reconstruct.hpp"
#include "omegacloud/svg.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace omegacloud;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidCloud:
        case ErrorCode::InvalidArc:
        case ErrorCode::NonClosingCloud:
        case ErrorCode::NonClosing:
        case ErrorCode::NotASegment:
        case ErrorCode::AmbiguousOmega:
        case ErrorCode::StrictNarrowEncountered:
        case ErrorCode::ContactOffCircle:
            return 3;
        case ErrorCode::SingleCircleAmbiguous: return 4;
        case ErrorCode::CertificationFailed: return 5;
        default: return 2;
    }
}

int fail(std::string_view code, const std::string& message, int exit_code) {
    std::cerr << json{{"error", code}, {"message", message}, {"exit_code", exit_code}}.dump() << "\n";
    return exit_code;
}

int fail(const Error& e) { return fail(to_string(e.code()), e.what(), exit_code_for(e.code())); }

/// A typed omega plus how precisely it was typed: "2.0943951" is only
/// known to +-5e-8, and tolerances widen by that much.
struct OmegaArg {
    Radians value = 0.0;
    double uncertainty = 0.0;
};

OmegaArg parse_omega(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw Error(ErrorCode::ParseError, "omega must be a number in radians, got \"" + text + "\"");
    }
    if (!(v > 0.0 && v < kPi)) throw Error(ErrorCode::OmegaOutOfRange, "omega out of range (0, pi): " + text);
    OmegaArg arg{v, 0.0};
    const auto dot = text.find('.');
    if (dot != std::string::npos && text.find_first_of("eE") == std::string::npos) {
        const std::size_t decimals = text.size() - dot - 1;
        if (decimals < 15) arg.uncertainty = 0.5 * std::pow(10.0, -static_cast<double>(decimals));
    }
    return arg;
}

/// The library ignores a malformed OMEGA_CLOUD_EPS; the CLI reports it.
void check_eps_env() {
    const char* env = std::getenv("OMEGA_CLOUD_EPS");
    if (env == nullptr || *env == '\0') return;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0 || v >= 1e-2) {
        throw Error(ErrorCode::ParseError,
                    std::string("OMEGA_CLOUD_EPS must be a number in (0, 0.01), got \"") + env + "\"");
    }
}

struct SizeRange {
    std::size_t lo = 8;
    std::size_t hi = 8;
};

SizeRange parse_range(const std::string& text) {
    SizeRange r;
    try {
        const auto sep = text.find("..");
        if (sep == std::string::npos) {
            r.lo = r.hi = std::stoul(text);
        } else {
            r.lo = std::stoul(text.substr(0, sep));
            r.hi = std::stoul(text.substr(sep + 2));
        }
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "vertex count must be N or A..B, got \"" + text + "\"");
    }
    if (r.lo < 3 || r.hi < r.lo || r.hi > 100000) {
        throw Error(ErrorCode::ParseError, "vertex count range must lie within 3..100000");
    }
    return r;
}

json report_json(const ReconstructionResult& r) {
    return json{{"omega", r.omega},
                {"certified", r.certified},
                {"pivot_visits", r.pivot_visits},
                {"narrow_count", r.narrow_count},
                {"working_set", r.working_set}};
}

int cmd_cloud(const std::string& input, const std::string& omega_text, bool maximal, const std::string& out) {
    const OmegaArg omega = parse_omega(omega_text);
    const ConvexPolygon p = polygon_from_json(read_json(input));
    Cloud c = omega_cloud(p, omega.value);
    if (maximal) c = maximal_cloud(c);
    write_text(out, dump(cloud_to_json(c)));
    return 0;
}

int cmd_reconstruct(const std::string& input, const std::optional<std::string>& omega_text, bool oblivious,
                    const std::string& out) {
    if (omega_text.has_value() == oblivious) {
        throw Error(ErrorCode::ParseError, "give exactly one of --omega and --oblivious");
    }
    const Cloud c = cloud_from_json(read_json(input));
    ReconstructOptions opts;
    std::optional<ReconstructionResult> r;
    if (oblivious) {
        r.emplace(reconstruct_oblivious(c, opts));
    } else {
        // Take the typed value at face value first; only if that fails,
        // allow for the rounding its number of decimals implies.
        const OmegaArg omega = parse_omega(*omega_text);
        try {
            r.emplace(reconstruct_aware(c, omega.value, opts));
        } catch (const Error& e) {
            if (omega.uncertainty == 0.0 || e.code() == ErrorCode::SingleCircleAmbiguous) throw;
            opts.omega_uncertainty = omega.uncertainty;
            r.emplace(reconstruct_aware(c, omega.value, opts));
        }
    }
    json doc = polygon_to_json(r->polygon);
    doc["report"] = report_json(*r);
    write_text(out, dump(doc));
    if (!out.empty() && out != "-") std::cout << report_json(*r).dump() << "\n";
    return 0;
}

int cmd_roundtrip(const std::string& n_text, const std::optional<std::string>& omega_text, std::uint64_t seed,
                  std::size_t count, bool corrupt) {
    const SizeRange sizes = parse_range(n_text);
    std::optional<OmegaArg> fixed;
    if (omega_text) fixed = parse_omega(*omega_text);
    std::mt19937_64 rng(seed);

    std::size_t passed = 0;
    double worst_vertex = 0.0, worst_omega = 0.0;
    std::printf("%6s %6s %12s %8s %10s %12s\n", "case", "n", "omega", "aware", "oblivious", "vertex_err");
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t n = sizes.lo + static_cast<std::size_t>(rng() % (sizes.hi - sizes.lo + 1));
        const ConvexPolygon p = random_convex_polygon(n, rng());
        const Radians omega = fixed ? fixed->value : sample_omega(p, rng, 0.1, kPi - 0.1);
        const double tol = 1e-6 * p.diameter();
        std::string aware = "FAIL", oblivious = "-";
        double err = std::numeric_limits<double>::infinity();
        try {
            Cloud c = maximal_cloud(omega_cloud(p, omega));
            if (corrupt) {
                // Swap in the cloud of a slightly different polygon.
                std::vector<Point2> moved(p.vertices().begin(), p.vertices().end());
                moved[0] = moved[0] + Point2{1e-3 * p.diameter(), 0.0};
                c = maximal_cloud(omega_cloud(validate_convex(moved), omega));
            }
            const ReconstructionResult r = reconstruct_aware(c, omega);
            const MatchReport m = match_polygons(p, r.polygon, tol);
            err = m.max_vertex_error;
            bool ok = m.verdict && r.certified;
            aware = ok ? "ok" : "FAIL";
            if (omega < 0.5 * kPi) {
                const ReconstructionResult o = reconstruct_oblivious(c);
                const MatchReport mo = match_polygons(p, o.polygon, tol);
                const double werr = std::abs(o.omega - omega);
                worst_omega = std::max(worst_omega, werr);
                err = std::max(err, mo.max_vertex_error);
                const bool ook = mo.verdict && werr <= 1e-9;
                oblivious = ook ? "ok" : "FAIL";
                ok = ok && ook;
            }
            if (ok) ++passed;
        } catch (const Error& e) {
            aware = std::string(to_string(e.code()));
        }
        worst_vertex = std::max(worst_vertex, err / p.diameter());
        std::printf("%6zu %6zu %12.9f %8s %10s %12.3e\n", k, n, omega, aware.c_str(), oblivious.c_str(), err);
    }
    std::printf("passed %zu/%zu; max relative vertex error %.3e; max omega error %.3e\n", passed, count,
                worst_vertex, worst_omega);
    return passed == count ? 0 : 1;
}

int cmd_render(const std::vector<std::string>& inputs, const std::string& out) {
    Figure fig;
    for (const std::string& path : inputs) {
        Document doc = read_document(path);
        if (auto* p = std::get_if<ConvexPolygon>(&doc)) {
            fig.polygons.push_back(std::move(*p));
        } else {
            fig.clouds.push_back(std::move(std::get<Cloud>(doc)));
        }
    }
    write_text(out, render_svg(fig));
    return 0;
}

int cmd_generate(std::size_t n, std::uint64_t seed, const std::string& out) {
    write_text(out, dump(polygon_to_json(random_convex_polygon(n, seed))));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Omega-clouds of convex polygons: forward construction and reconstruction"};
    app.require_subcommand(1);

    std::string input, out, omega_text, n_text = "8";
    std::optional<std::string> omega_opt;
    bool maximal = false, oblivious = false, corrupt = false;
    std::uint64_t seed = 1;
    std::size_t count = 100, n_vertices = 8;
    std::vector<std::string> inputs;

    auto* cloud = app.add_subcommand("cloud", "compute the omega-cloud of a polygon file");
    cloud->add_option("input", input, "polygon file")->required();
    cloud->add_option("--omega", omega_text, "wedge angle in radians, 0 < omega < pi")->required();
    cloud->add_flag("--maximal", maximal, "merge co-circular arcs");
    cloud->add_option("--out", out, "output cloud file (default stdout)");

    auto* rec = app.add_subcommand("reconstruct", "recover the polygon from a cloud file");
    rec->add_option("input", input, "cloud file")->required();
    rec->add_option("--omega", omega_opt, "known wedge angle in radians");
    rec->add_flag("--oblivious", oblivious, "recover omega from the cloud as well");
    rec->add_option("--out", out, "output polygon file (default stdout)");

    auto* rt = app.add_subcommand("roundtrip", "random forward + reconstruct checks");
    rt->add_option("--n", n_text, "vertex count N or range A..B")->capture_default_str();
    rt->add_option("--omega", omega_opt, "fixed omega (default: sampled per polygon)");
    rt->add_option("--seed", seed, "random seed")->capture_default_str();
    rt->add_option("--count", count, "number of polygons")->capture_default_str();
    rt->add_flag("--corrupt", corrupt, "feed each check the cloud of a perturbed polygon (must fail)");

    auto* render = app.add_subcommand("render", "draw polygon and cloud files as SVG");
    render->add_option("inputs", inputs, "polygon and/or cloud files")->required();
    render->add_option("--out", out, "output SVG (default stdout)");

    auto* gen = app.add_subcommand("generate", "write a random convex polygon file");
    gen->add_option("--n", n_vertices, "vertex count")->capture_default_str()->check(CLI::Range(3, 100000));
    gen->add_option("--seed", seed, "random seed")->capture_default_str();
    gen->add_option("--out", out, "output polygon file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("ParseError", e.what(), 2);
    }

    try {
        check_eps_env();
        if (*cloud) return cmd_cloud(input, omega_text, maximal, out);
        if (*rec) return cmd_reconstruct(input, omega_opt, oblivious, out);
        if (*rt) return cmd_roundtrip(n_text, omega_opt, seed, count, corrupt);
        if (*render) return cmd_render(inputs, out);
        if (*gen) return cmd_generate(n_vertices, seed, out);
    } catch (const Error& e) {
        return fail(e);
    } catch (const std::exception& e) {
        return fail("InternalError", e.what(), 2);
    }
    return 2;
}
