#include "polygpt/gpt/builders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace polygpt {

using geom::HalfSpaceD;

namespace {

// Two halfspaces per extremal state: 0 <= <e, w> <= 1.
std::vector<HalfSpaceD> halfspaces_from_states(const std::vector<State>& states) {
    std::vector<HalfSpaceD> hs;
    hs.reserve(2 * states.size());
    for (const State& w : states) {
        std::vector<double> up = w.coords;
        hs.emplace_back(up, 1.0);
        for (double& c : up) c = -c;
        hs.emplace_back(std::move(up), 0.0);
    }
    return hs;
}

// Display order: zero, nontrivial extremals by (z, angle), unit.
void sort_extremal_effects(Theory& t) {
    std::vector<Effect> nontrivial;
    for (const Effect& e : t.extremal_effects) {
        if (max_abs_diff(e, t.zero) <= 1e-9 || max_abs_diff(e, t.unit) <= 1e-9) continue;
        nontrivial.push_back(e);
    }
    std::sort(nontrivial.begin(), nontrivial.end(), [](const Effect& a, const Effect& b) {
        const double za = a.coords.back();
        const double zb = b.coords.back();
        if (std::abs(za - zb) > 1e-9) return za < zb;
        return std::atan2(a.coords[1], a.coords[0]) < std::atan2(b.coords[1], b.coords[0]);
    });
    std::vector<Effect> ordered;
    ordered.reserve(t.extremal_effects.size());
    ordered.push_back(t.zero);
    for (Effect& e : nontrivial) ordered.push_back(std::move(e));
    ordered.push_back(t.unit);
    if (ordered.size() != t.extremal_effects.size()) {
        throw std::runtime_error("sort_extremal_effects: zero/unit not among extremals");
    }
    t.extremal_effects = std::move(ordered);
}

void attach_reflecting_hyperplane(Theory& t) {
    const ReflectingHyperplaneResult r = find_reflecting_hyperplane(t);
    if (r.found()) t.reflecting_hyperplane = r.hyperplane;
}

}  // namespace

Theory build_classical_theory(int n) {
    if (n < 2) throw std::invalid_argument("classical theory: n must be >= 2");
    if (n > 12) throw std::invalid_argument("classical theory: n capped at 12");

    Theory t;
    t.name = "classical-" + std::to_string(n);
    t.dim = n;
    for (int i = 0; i < n; ++i) {
        std::vector<double> c(n, 0.0);
        c[static_cast<std::size_t>(i)] = 1.0;
        t.extremal_states.emplace_back(std::move(c));
    }
    t.unit = Effect(std::vector<double>(n, 1.0));
    t.zero = Effect(std::vector<double>(n, 0.0));
    t.effect_halfspaces = halfspaces_from_states(t.extremal_states);

    // Hypercube corners, in binary counting order (zero first, unit last).
    const std::size_t count = std::size_t{1} << n;
    t.extremal_effects.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<double> c(n, 0.0);
        for (int i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) c[static_cast<std::size_t>(i)] = 1.0;
        }
        t.extremal_effects.emplace_back(std::move(c));
    }
    attach_reflecting_hyperplane(t);
    return t;
}

Theory build_regular_polygon_theory(int n) {
    if (n < 3) throw std::invalid_argument("polygon theory: n must be >= 3");

    Theory t;
    t.name = "polygon-" + std::to_string(n);
    t.dim = 3;
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * std::numbers::pi * k / n;
        t.extremal_states.emplace_back(std::vector<double>{std::cos(th), std::sin(th), 1.0});
    }
    t.unit = Effect({0.0, 0.0, 1.0});
    t.zero = Effect({0.0, 0.0, 0.0});
    t.effect_halfspaces = halfspaces_from_states(t.extremal_states);
    t.extremal_effects = enumerate_extremal_effects(t);
    sort_extremal_effects(t);
    attach_reflecting_hyperplane(t);
    return t;
}

Theory build_square_bit() {
    Theory t;
    t.name = "square-bit";
    t.dim = 3;

    // Four-outcome classical data restricted by e1 + e2 = e3 + e4, labeled so
    // the probability table comes out in display order. States are the
    // simplex corners projected to the surface w1 + w2 = 1/2 = w3 + w4.
    Presentation pres;
    pres.original_dim = 4;
    pres.effect_labels = {"o", "e1", "e2", "e3", "e4", "u"};
    pres.original_effects = {
        {0.0, 0.0, 0.0, 0.0},
        {1.0, 0.0, 0.0, 1.0},
        {0.0, 1.0, 1.0, 0.0},
        {0.0, 1.0, 0.0, 1.0},
        {1.0, 0.0, 1.0, 0.0},
        {1.0, 1.0, 1.0, 1.0},
    };
    pres.original_states = {
        {0.75, -0.25, 0.25, 0.25},
        {0.25, 0.25, -0.25, 0.75},
        {0.25, 0.25, 0.75, -0.25},
        {-0.25, 0.75, 0.25, 0.25},
    };
    // Internal coordinates: x = (e1 - e2)/2, y = (e3 - e4)/2, z = (sum)/4 for
    // effects; s = (w1 - w2, w3 - w4, 1) for states. The dual pairing is
    // preserved on the projected state surface.
    pres.effect_map = {
        {0.5, -0.5, 0.0, 0.0},
        {0.0, 0.0, 0.5, -0.5},
        {0.25, 0.25, 0.25, 0.25},
    };

    const auto map_effect = [&](const std::vector<double>& e4) {
        std::vector<double> out(3, 0.0);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 4; ++c) {
                out[static_cast<std::size_t>(r)] +=
                    pres.effect_map[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                    e4[static_cast<std::size_t>(c)];
            }
        }
        return out;
    };

    for (const auto& w : pres.original_states) {
        t.extremal_states.emplace_back(std::vector<double>{w[0] - w[1], w[2] - w[3], 1.0});
    }
    t.zero = Effect(map_effect(pres.original_effects[0]));
    t.unit = Effect(map_effect(pres.original_effects[5]));
    for (const auto& e4 : pres.original_effects) {
        t.extremal_effects.emplace_back(map_effect(e4));
    }
    t.presentation = std::move(pres);
    t.effect_halfspaces = halfspaces_from_states(t.extremal_states);

    // The labeled set must agree with vertex enumeration of the polytope.
    std::vector<Effect> enumerated = enumerate_extremal_effects(t);
    if (enumerated.size() != t.extremal_effects.size()) {
        throw std::runtime_error("square bit: unexpected extremal effect count");
    }
    for (const Effect& e : t.extremal_effects) {
        const bool present = std::any_of(enumerated.begin(), enumerated.end(),
                                         [&](const Effect& v) { return max_abs_diff(v, e) <= 1e-9; });
        if (!present) throw std::runtime_error("square bit: labeled effect is not a vertex");
    }
    attach_reflecting_hyperplane(t);
    return t;
}

Theory build_displaced_hexagon(double delta) {
    if (!(delta > 0.0) || !(delta < 0.5)) {
        throw std::invalid_argument("displaced hexagon: delta must lie in (0, 1/2)");
    }

    char label[48];
    std::snprintf(label, sizeof(label), "displaced-hexagon-%g", delta);

    Theory t;
    t.name = label;
    t.dim = 3;
    t.effect_space_first = true;
    t.unit = Effect({0.0, 0.0, 1.0});
    t.zero = Effect({0.0, 0.0, 0.0});

    // Hexagonal ring of unbiased extremals at circumradius 1/2; the k = 0
    // and k = 3 members move off the plane by +-delta. Antipodal pairs keep
    // summing to the unit, so complement closure survives.
    t.extremal_effects.push_back(t.zero);
    for (int k = 0; k < 6; ++k) {
        const double th = std::numbers::pi * k / 3.0;
        double z = 0.5;
        if (k == 0) z += delta;
        if (k == 3) z -= delta;
        t.extremal_effects.emplace_back(
            std::vector<double>{0.5 * std::cos(th), 0.5 * std::sin(th), z});
    }
    t.extremal_effects.push_back(t.unit);

    std::vector<std::vector<double>> pts;
    pts.reserve(t.extremal_effects.size());
    for (const Effect& e : t.extremal_effects) pts.push_back(e.coords);
    t.effect_halfspaces = geom::convex_hull_facets_3d(pts);

    // Every listed effect must be a genuine vertex of its own hull.
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::vector<double>> others;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j != i) others.push_back(pts[j]);
        }
        if (geom::in_convex_hull(others, pts[i])) {
            throw std::runtime_error("displaced hexagon: listed effect is not extremal");
        }
    }
    attach_reflecting_hyperplane(t);
    return t;
}

}  // namespace polygpt
