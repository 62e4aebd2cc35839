// polygpt: builds generalized-probability theories (classical, square-bit,
// regular-polygon, displaced-hexagon), decides coexistence of unbiased
// effect pairs by closed-form criterion and linear-feasibility oracle, and
// exports coexistence-region data as CSV/SVG.
//
// Exit codes: 0 success, 1 verification failure or criterion/oracle
// disagreement, 2 invalid flags or coordinates, 3 theory construction
// failure, 4 closed-form criterion requested for an odd polygon.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "polygpt/coex/coexistence.hpp"
#include "polygpt/export.hpp"
#include "polygpt/gpt/builders.hpp"
#include "polygpt/gpt/serialize.hpp"
#include "polygpt/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitOddPolygon = 4;

using polygpt::Effect;
using polygpt::Theory;
using polygpt::geom::Vec2;

struct GlobalFlags {
    std::string out;
    std::uint64_t seed = 1234;
    double tol = 1e-9;
};

struct TheorySource {
    int polygon = 0;
    int classical = 0;
    bool square_bit = false;
    double displaced_hexagon = -1.0;
    std::string file;

    int provided_count(const CLI::App* cmd) const {
        int count = 0;
        count += cmd->count("--polygon") > 0;
        count += cmd->count("--classical") > 0;
        count += cmd->count("--square-bit") > 0;
        count += cmd->count("--displaced-hexagon") > 0;
        count += cmd->count("--theory") > 0;
        return count;
    }

    Theory build(const CLI::App* cmd) const {
        if (cmd->count("--polygon")) return polygpt::build_regular_polygon_theory(polygon);
        if (cmd->count("--classical")) return polygpt::build_classical_theory(classical);
        if (cmd->count("--square-bit")) return polygpt::build_square_bit();
        if (cmd->count("--displaced-hexagon")) {
            return polygpt::build_displaced_hexagon(displaced_hexagon);
        }
        return polygpt::load_theory_file(file);
    }
};

void add_theory_source(CLI::App* cmd, TheorySource& src) {
    cmd->add_option("--polygon", src.polygon, "regular polygon theory with N vertices");
    cmd->add_option("--classical", src.classical, "N-level classical theory");
    cmd->add_flag("--square-bit", src.square_bit, "the square bit (gbit) theory");
    cmd->add_option("--displaced-hexagon", src.displaced_hexagon,
                    "displaced hexagon counterexample with displacement D");
    cmd->add_option("--theory", src.file, "load a serialized theory document");
}

bool write_output(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return out.good();
}

std::string effect_json(const Effect& e) {
    std::string s = "[";
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
        if (i) s += ", ";
        s += polygpt::format_g17(e.coords[i]);
    }
    return s + "]";
}

// ---------------------------------------------------------------------------

int cmd_theory(const CLI::App* cmd, const TheorySource& src, const GlobalFlags& flags) {
    Theory t;
    try {
        t = src.build(cmd);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConstruction;
    }
    const std::string doc = polygpt::theory_to_json(t);
    const std::string summary = polygpt::theory_summary(t);
    if (!flags.out.empty()) {
        if (!write_output(flags.out, doc)) {
            std::cerr << "error: cannot write " << flags.out << "\n";
            return kExitBadInput;
        }
        std::cout << summary;
    } else {
        std::cout << doc;
        std::cerr << summary;
    }
    return kExitOk;
}

int cmd_effects(const CLI::App* cmd, const TheorySource& src, const GlobalFlags& flags) {
    Theory t;
    try {
        t = src.build(cmd);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConstruction;
    }
    const std::string csv = polygpt::effects_csv(t);
    if (!flags.out.empty()) {
        if (!write_output(flags.out, csv)) {
            std::cerr << "error: cannot write " << flags.out << "\n";
            return kExitBadInput;
        }
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

std::optional<Effect> effect_from_coords(const std::vector<double>& coords, const Theory& t) {
    if (static_cast<int>(coords.size()) == t.dim) return Effect(coords);
    if (coords.size() == 2 && t.dim == 3) {
        return Effect({coords[0], coords[1], 0.5});  // unbiased by default
    }
    return std::nullopt;
}

int cmd_coexist(const CLI::App* cmd, const TheorySource& src, const GlobalFlags& flags,
                const std::vector<double>& e_coords, const std::vector<double>& f_coords,
                const std::string& method) {
    if (method != "criterion" && method != "oracle" && method != "both") {
        std::cerr << "error: --method must be criterion, oracle or both\n";
        return kExitBadInput;
    }
    const bool wants_criterion = method != "oracle";
    if (wants_criterion) {
        if (cmd->count("--polygon") == 0) {
            std::cerr << "error: the closed-form criterion needs --polygon N\n";
            return kExitBadInput;
        }
        if (src.polygon % 2 != 0 || src.polygon < 4) {
            std::cerr << "error: the closed-form criterion is stated for even polygons\n";
            return kExitOddPolygon;
        }
    }

    Theory t;
    try {
        t = src.build(cmd);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConstruction;
    }

    const auto e = effect_from_coords(e_coords, t);
    const auto f = effect_from_coords(f_coords, t);
    if (!e || !f) {
        std::cerr << "error: --e/--f must carry " << t.dim
                  << " coordinates (or 2 for unbiased effects)\n";
        return kExitBadInput;
    }
    if (!polygpt::is_effect(t, *e, flags.tol) || !polygpt::is_effect(t, *f, flags.tol)) {
        std::cerr << "error: --e/--f do not lie in the effect space\n";
        return kExitBadInput;
    }

    std::optional<polygpt::CoexistenceVerdict> criterion;
    std::optional<polygpt::CoexistenceVerdict> oracle;
    try {
        if (wants_criterion) {
            criterion = polygpt::criterion_verdict(src.polygon, e->xy(), f->xy());
        }
        if (method != "criterion") {
            oracle = polygpt::coexist_oracle(t, *e, *f);
        }
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitBadInput;
    }

    const bool coexistent = criterion ? criterion->coexistent : oracle->coexistent;
    bool agree = true;
    if (criterion && oracle && criterion->coexistent != oracle->coexistent) {
        // Tolerate disagreement only inside the boundary slack band.
        agree = criterion->slack && std::abs(*criterion->slack) <= 1e-6;
    }

    std::string out = "{\n";
    out += "  \"coexistent\": " + std::string(coexistent ? "true" : "false") + ",\n";
    out += "  \"method\": \"" + method + "\"";
    if (criterion && criterion->slack) {
        out += ",\n  \"slack\": " + polygpt::format_g17(*criterion->slack);
    }
    if (oracle && oracle->witness) {
        const auto& [g1, g2, g3] = *oracle->witness;
        out += ",\n  \"witness\": {\"g1\": " + effect_json(g1) +
               ", \"g2\": " + effect_json(g2) + ", \"g3\": " + effect_json(g3) + "}";
    }
    if (criterion && oracle) {
        out += ",\n  \"agreement\": " + std::string(agree ? "true" : "false");
    }
    out += "\n}\n";
    if (!flags.out.empty()) {
        if (!write_output(flags.out, out)) {
            std::cerr << "error: cannot write " << flags.out << "\n";
            return kExitBadInput;
        }
    } else {
        std::cout << out;
    }
    return agree ? kExitOk : kExitVerifyFailure;
}

int cmd_region(const CLI::App* cmd, const TheorySource& src, const GlobalFlags& flags,
               const std::vector<double>& e_coords, double edge_ratio, double vertex_ratio,
               const std::string& svg_path) {
    if (cmd->count("--polygon") == 0) {
        std::cerr << "error: region requires --polygon N\n";
        return kExitBadInput;
    }
    const int n = src.polygon;
    if (n < 4 || n % 2 != 0) {
        std::cerr << "error: coexistence regions are defined for even polygons (n >= 4)\n";
        return kExitOddPolygon;
    }

    const int placements = (cmd->count("--e") > 0) + (cmd->count("--edge-ratio") > 0) +
                           (cmd->count("--vertex-ratio") > 0);
    if (placements != 1) {
        std::cerr << "error: give exactly one of --e, --edge-ratio, --vertex-ratio\n";
        return kExitBadInput;
    }

    Vec2 e{0.0, 0.0};
    if (cmd->count("--e")) {
        if (e_coords.size() != 2) {
            std::cerr << "error: --e must carry two coordinates\n";
            return kExitBadInput;
        }
        e = {e_coords[0], e_coords[1]};
    } else if (cmd->count("--edge-ratio")) {
        e = {0.5 * edge_ratio, 0.0};  // toward the midpoint of the k=0 edge
    } else {
        const double r = 0.5 / std::cos(std::numbers::pi / n);  // circumradius
        const double th = std::numbers::pi / n;                 // k=0 vertex angle
        e = {vertex_ratio * r * std::cos(th), vertex_ratio * r * std::sin(th)};
    }

    const auto unbiased = polygpt::geom::regular_constraint_polygon(n, 0.5, {0.0, 0.0});
    if (!polygpt::geom::contains_point(unbiased, e, std::max(flags.tol, 1e-9))) {
        std::cerr << "error: e lies outside the unbiased polygon\n";
        return kExitBadInput;
    }

    const polygpt::RegionReport rep = polygpt::coexistence_region(n, e);
    const std::string csv = polygpt::region_csv(rep);
    if (!flags.out.empty()) {
        if (!write_output(flags.out, csv)) {
            std::cerr << "error: cannot write " << flags.out << "\n";
            return kExitBadInput;
        }
    } else {
        std::cout << csv;
    }
    if (!svg_path.empty()) {
        if (!write_output(svg_path, polygpt::region_svg(rep))) {
            std::cerr << "error: cannot write " << svg_path << "\n";
            return kExitBadInput;
        }
    }
    return kExitOk;
}

int cmd_limit(const GlobalFlags& flags, const std::vector<double>& e_coords,
              const std::vector<int>& n_list) {
    if (e_coords.size() != 2) {
        std::cerr << "error: --e must carry two coordinates\n";
        return kExitBadInput;
    }
    const Vec2 e{e_coords[0], e_coords[1]};
    if (e.norm() >= 0.5) {
        std::cerr << "error: |e| must be < 1/2 for the quantum-limit comparison\n";
        return kExitBadInput;
    }
    if (n_list.empty()) {
        std::cerr << "error: --n-list must name at least one even n\n";
        return kExitBadInput;
    }
    for (int n : n_list) {
        if (n < 4 || n % 2 != 0) {
            std::cerr << "error: --n-list entries must be even and >= 4\n";
            return kExitOddPolygon;
        }
    }
    const auto rows = polygpt::compute_limit_rows(e, n_list);
    const std::string csv = polygpt::limit_csv(e, rows);
    if (!flags.out.empty()) {
        if (!write_output(flags.out, csv)) {
            std::cerr << "error: cannot write " << flags.out << "\n";
            return kExitBadInput;
        }
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

int cmd_verify(const GlobalFlags& flags, const std::string& only, int samples) {
    if (samples < 1000) {
        std::cerr << "error: --samples must be >= 1000\n";
        return kExitBadInput;
    }
    polygpt::selftest::Options options;
    options.seed = flags.seed;
    options.samples = samples;
    options.only = only;
    const auto results = polygpt::selftest::run_acceptance_checks(options);
    if (results.empty()) {
        std::cerr << "error: no checks match --only " << only << "\n";
        return kExitBadInput;
    }
    std::string out;
    int failed = 0;
    for (const auto& r : results) {
        out += std::string(r.passed ? "[PASS] " : "[FAIL] ") + r.id + " " + r.detail + "\n";
        failed += r.passed ? 0 : 1;
    }
    out += "verify: checks=" + std::to_string(results.size()) +
           " failed=" + std::to_string(failed) + "\n";
    if (!flags.out.empty()) {
        if (!write_output(flags.out, out)) {
            std::cerr << "error: cannot write " << flags.out << "\n";
            return kExitBadInput;
        }
    } else {
        std::cout << out;
    }
    return failed == 0 ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized probability theories: coexistence of unbiased effects"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    app.add_option("--out", flags.out, "write the primary output to this file");
    app.add_option("--seed", flags.seed, "seed for randomized checks");
    app.add_option("--tol", flags.tol, "membership tolerance (default 1e-9)");

    TheorySource theory_src, effects_src, coexist_src, region_src;

    auto* theory_cmd = app.add_subcommand("theory", "build and serialize a theory");
    add_theory_source(theory_cmd, theory_src);

    auto* effects_cmd = app.add_subcommand("effects", "list the extremal effects of a theory");
    add_theory_source(effects_cmd, effects_src);

    auto* coexist_cmd = app.add_subcommand("coexist", "decide coexistence of two effects");
    add_theory_source(coexist_cmd, coexist_src);
    std::vector<double> ce, cf;
    std::string method = "both";
    coexist_cmd->add_option("--e", ce, "first effect coordinates")->delimiter(',');
    coexist_cmd->add_option("--f", cf, "second effect coordinates")->delimiter(',');
    coexist_cmd->add_option("--method", method, "criterion | oracle | both");

    auto* region_cmd = app.add_subcommand("region", "coexistence region of a fixed effect");
    add_theory_source(region_cmd, region_src);
    std::vector<double> re;
    double edge_ratio = 0.0, vertex_ratio = 0.0;
    std::string svg_path;
    region_cmd->add_option("--e", re, "fixed unbiased effect (x,y)")->delimiter(',');
    region_cmd->add_option("--edge-ratio", edge_ratio,
                           "place e at this fraction of the apothem toward the k=0 edge");
    region_cmd->add_option("--vertex-ratio", vertex_ratio,
                           "place e at this fraction of the circumradius toward the k=0 vertex");
    region_cmd->add_option("--svg", svg_path, "also render the region to this SVG file");

    auto* limit_cmd = app.add_subcommand("limit", "area convergence toward the Busch ellipse");
    std::vector<double> le;
    std::vector<int> n_list;
    limit_cmd->add_option("--e", le, "fixed effect (x,y), |e| < 1/2")->delimiter(',');
    limit_cmd->add_option("--n-list", n_list, "even polygon sizes to evaluate")->delimiter(',');

    auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
    std::string only;
    int samples = 10000;
    verify_cmd->add_option("--only", only, "run only checks whose id contains this text");
    verify_cmd->add_option("--samples", samples, "Monte Carlo sample count (default 10000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    const auto check_single_source = [](const CLI::App* cmd, const TheorySource& src) {
        if (src.provided_count(cmd) != 1) {
            std::cerr << "error: give exactly one theory source among --polygon, --classical,"
                         " --square-bit, --displaced-hexagon, --theory\n";
            return false;
        }
        return true;
    };

    try {
        if (*theory_cmd) {
            if (!check_single_source(theory_cmd, theory_src)) return kExitBadInput;
            return cmd_theory(theory_cmd, theory_src, flags);
        }
        if (*effects_cmd) {
            if (!check_single_source(effects_cmd, effects_src)) return kExitBadInput;
            return cmd_effects(effects_cmd, effects_src, flags);
        }
        if (*coexist_cmd) {
            if (!check_single_source(coexist_cmd, coexist_src)) return kExitBadInput;
            if (ce.empty() || cf.empty()) {
                std::cerr << "error: coexist needs --e and --f\n";
                return kExitBadInput;
            }
            return cmd_coexist(coexist_cmd, coexist_src, flags, ce, cf, method);
        }
        if (*region_cmd) {
            return cmd_region(region_cmd, region_src, flags, re, edge_ratio, vertex_ratio,
                              svg_path);
        }
        if (*limit_cmd) {
            return cmd_limit(flags, le, n_list);
        }
        if (*verify_cmd) {
            return cmd_verify(flags, only, samples);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
