#include "polygpt/export.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "polygpt/gpt/serialize.hpp"

namespace polygpt {

using geom::ConvexPolygon2D;
using geom::Vec2;

std::vector<LimitRow> compute_limit_rows(const Vec2& e, const std::vector<int>& ns) {
    std::vector<LimitRow> rows;
    rows.reserve(ns.size());
    const double ellipse = std::numbers::pi * 0.5 * std::sqrt(0.25 - e.norm() * e.norm());
    for (int n : ns) {
        LimitRow row;
        row.n = n;
        row.area = coexistence_region(n, e).area;
        row.ellipse_area = ellipse;
        row.relative_gap = std::abs(row.area - ellipse) / ellipse;
        rows.push_back(row);
    }
    return rows;
}

ProbeStats region_probe_stats(const RegionReport& rep, int grid) {
    ProbeStats stats;
    const double radius = 0.5 / std::cos(std::numbers::pi / rep.n);
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const Vec2 f{-radius + 2.0 * radius * (i + 0.5) / grid,
                         -radius + 2.0 * radius * (j + 0.5) / grid};
            if (!geom::contains_point(rep.clipped_to, f, -1e-9)) continue;
            const CoexistenceVerdict v = criterion_verdict(rep.n, rep.fixed_effect, f);
            if (v.slack && std::abs(*v.slack) <= 1e-6) {
                ++stats.band;
                continue;
            }
            const bool in_region = geom::contains_point(rep.region, f, 1e-9);
            if (in_region == v.coexistent) {
                ++stats.agree;
            } else {
                ++stats.disagree;
            }
        }
    }
    return stats;
}

std::string region_csv(const RegionReport& rep) {
    const ProbeStats stats = region_probe_stats(rep);
    std::string out;
    out += "# tool=polygpt ";
    out += kToolVersion;
    out += "\n# n=" + std::to_string(rep.n);
    out += "\n# e=" + format_g17(rep.fixed_effect.x) + "," + format_g17(rep.fixed_effect.y);
    out += "\n# method=criterion-region";
    out += "\n# area=" + format_g17(rep.area);
    out += "\n# probe_grid=50x50";
    out += "\n# probe_agree=" + std::to_string(stats.agree);
    out += "\n# probe_band=" + std::to_string(stats.band);
    out += "\n# probe_disagree=" + std::to_string(stats.disagree);
    out += "\nx,y\n";
    for (const Vec2& v : rep.region.vertices()) {
        out += format_g17(v.x) + "," + format_g17(v.y) + "\n";
    }
    return out;
}

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// World window [-0.75, 0.75]^2 onto a 600 x 600 canvas, y up.
Vec2 to_canvas(const Vec2& w) {
    const double s = 600.0 / 1.5;
    return {(w.x + 0.75) * s, 600.0 - (w.y + 0.75) * s};
}

std::string polygon_points(const ConvexPolygon2D& poly) {
    std::string pts;
    for (const Vec2& v : poly.vertices()) {
        const Vec2 c = to_canvas(v);
        if (!pts.empty()) pts += ' ';
        pts += px(c.x) + "," + px(c.y);
    }
    return pts;
}

}  // namespace

std::string region_svg(const RegionReport& rep) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n";
    out += "<rect width=\"600\" height=\"600\" fill=\"#ffffff\"/>\n";
    out += "<polygon points=\"" + polygon_points(rep.clipped_to) +
           "\" fill=\"#e8e8e8\" stroke=\"#1f6fb4\" stroke-width=\"2\"/>\n";
    if (rep.region.size() >= 3) {
        out += "<polygon points=\"" + polygon_points(rep.region) +
               "\" fill=\"#ffffff\" stroke=\"none\"/>\n";
    } else if (rep.region.is_segment()) {
        out += "<polyline points=\"" + polygon_points(rep.region) +
               "\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"2\"/>\n";
    } else if (rep.region.is_point()) {
        const Vec2 c = to_canvas(rep.region.vertices()[0]);
        out += "<circle cx=\"" + px(c.x) + "\" cy=\"" + px(c.y) +
               "\" r=\"2\" fill=\"#ffffff\"/>\n";
    }
    const Vec2 center = to_canvas({0.0, 0.0});
    out += "<circle cx=\"" + px(center.x) + "\" cy=\"" + px(center.y) +
           "\" r=\"4\" fill=\"#1f6fb4\"/>\n";
    const Vec2 eff = to_canvas(rep.fixed_effect);
    out += "<circle cx=\"" + px(eff.x) + "\" cy=\"" + px(eff.y) +
           "\" r=\"5\" fill=\"#2ca02c\"/>\n";
    out += "</svg>\n";
    return out;
}

std::string limit_csv(const Vec2& e, const std::vector<LimitRow>& rows) {
    std::string out;
    out += "# tool=polygpt ";
    out += kToolVersion;
    out += "\n# e=" + format_g17(e.x) + "," + format_g17(e.y);
    out += "\nn,area,ellipse_area,relative_gap\n";
    for (const LimitRow& r : rows) {
        out += std::to_string(r.n) + "," + format_g17(r.area) + "," +
               format_g17(r.ellipse_area) + "," + format_g17(r.relative_gap) + "\n";
    }
    return out;
}

std::string effects_csv(const Theory& t) {
    std::string out;
    out += "# tool=polygpt ";
    out += kToolVersion;
    out += "\n# theory=" + t.name;
    out += "\n# d=" + std::to_string(t.dim);
    out += "\n# count=" + std::to_string(t.extremal_effects.size());
    out += "\nindex";
    for (int i = 0; i < t.dim; ++i) out += ",c" + std::to_string(i);
    out += "\n";
    for (std::size_t i = 0; i < t.extremal_effects.size(); ++i) {
        out += std::to_string(i);
        for (double c : t.extremal_effects[i].coords) out += "," + format_g17(c);
        out += "\n";
    }
    return out;
}

std::string theory_summary(const Theory& t) {
    std::string out;
    out += "theory " + t.name + ": d=" + std::to_string(t.dim);
    if (t.effect_space_first) {
        out += ", effect-space-first (no state set)";
    } else {
        out += ", " + std::to_string(t.extremal_states.size()) + " extremal states";
    }
    out += ", " + std::to_string(t.extremal_effects.size()) + " extremal effects\n";
    if (t.reflecting_hyperplane) {
        out += "reflecting hyperplane: normal=(";
        for (std::size_t i = 0; i < t.reflecting_hyperplane->normal.size(); ++i) {
            if (i) out += ",";
            out += format_g17(t.reflecting_hyperplane->normal[i]);
        }
        out += "), offset=" + format_g17(t.reflecting_hyperplane->offset) + "\n";
    } else {
        out += "reflecting hyperplane: none\n";
    }
    return out;
}

}  // namespace polygpt
