#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polygpt/geom/linear.hpp"
#include "polygpt/geom/polygon.hpp"

namespace polygpt {

/// State as a column vector. Theories in normal parametrization keep the
/// normalization coordinate (the last one) equal to 1.
struct State {
    std::vector<double> coords;

    State() = default;
    explicit State(std::vector<double> c);

    std::size_t dim() const { return coords.size(); }
};

/// Effect as a covector over states. For d = 3 the coordinates are (x, y, z)
/// and unbiased effects carry z = 1/2.
struct Effect {
    std::vector<double> coords;

    Effect() = default;
    explicit Effect(std::vector<double> c);

    std::size_t dim() const { return coords.size(); }
    double x() const { return coords.at(0); }
    double y() const { return coords.at(1); }
    double z() const { return coords.at(2); }
    geom::Vec2 xy() const { return {coords.at(0), coords.at(1)}; }
};

Effect operator+(const Effect& a, const Effect& b);
Effect operator-(const Effect& a, const Effect& b);
Effect operator*(double s, const Effect& a);
double max_abs_diff(const Effect& a, const Effect& b);

/// Hyperplane {e : normal . e = offset} in effect space.
struct Hyperplane {
    std::vector<double> normal;
    double offset = 0.0;
};

/// Original-coordinate presentation kept by builders that convert a theory
/// into the canonical parametrization (currently the square bit).
struct Presentation {
    int original_dim = 0;
    std::vector<std::string> effect_labels;
    std::vector<std::vector<double>> original_effects;
    std::vector<std::vector<double>> original_states;
    /// Rows of the linear map original effect coords -> internal coords.
    std::vector<std::vector<double>> effect_map;
};

/// A GPT instance: extremal states paired with the derived effect-space
/// data. Theories given effect-space-first carry no states; operations that
/// need states reject them.
struct Theory {
    std::string name;
    int dim = 0;
    std::vector<State> extremal_states;
    Effect unit;
    Effect zero;
    std::vector<Effect> extremal_effects;
    std::optional<Hyperplane> reflecting_hyperplane;
    /// Halfspace description of the effect polytope (unit normals). Derived
    /// from extremal states, or from hull facets for effect-space-first
    /// theories.
    std::vector<geom::HalfSpaceD> effect_halfspaces;
    bool effect_space_first = false;
    std::optional<Presentation> presentation;
};

/// Dual pairing <e, w>.
double probability(const Effect& e, const State& w);

/// u - e.
Effect effect_complement(const Theory& t, const Effect& e);

/// Membership in the theory's effect space within tol.
bool is_effect(const Theory& t, const Effect& e, double tol = geom::kGeomTol);

/// Re-derives extremal effects by vertex enumeration of the effect polytope.
/// Requires a state-based theory of dimension 2..4.
std::vector<Effect> enumerate_extremal_effects(const Theory& t);

enum class HyperplaneSearch {
    kFound,
    kNotFound,
    /// Fewer than d-1 affinely independent nontrivial extremals: the search
    /// is underdetermined and the answer would not be unique.
    kDegenerate,
};

struct ReflectingHyperplaneResult {
    HyperplaneSearch status = HyperplaneSearch::kNotFound;
    std::optional<Hyperplane> hyperplane;
    double max_residual = 0.0;

    bool found() const { return status == HyperplaneSearch::kFound; }
};

/// Least-squares hyperplane through u/2 over the nontrivial extremal
/// effects; accepted when the worst residual is below 1e-9.
ReflectingHyperplaneResult find_reflecting_hyperplane(const Theory& t);

/// True iff reflecting each extremal state through the extremal-state
/// centroid lands inside the state polytope.
bool is_state_space_point_symmetric(const Theory& t, double tol = geom::kGeomTol);

/// True iff the open midpoint of [e1, e2] admits no convex decomposition
/// with positive weight on extremal effects outside {e1, e2} (LP decision).
bool is_edge(const Theory& t, const Effect& e1, const Effect& e2);

/// The z = 1/2 slice of the effect polytope as a planar polygon. Requires a
/// d = 3 theory whose reflecting hyperplane is z = 1/2.
geom::ConvexPolygon2D unbiased_cross_section(const Theory& t);

/// 4 x 6 probability table of the square bit in Table order
/// (rows: states; columns: zero, e1..e4, unit).
std::vector<std::vector<double>> square_bit_probability_table(const Theory& t);

/// Searches for an invertible affine map carrying the extremal effects of
/// `a` onto those of `b` with unit -> unit. Returns the residual of the best
/// candidate (0 when none exists is impossible; +inf when sizes differ).
double affine_equivalence_residual(const Theory& a, const Theory& b);

}  // namespace polygpt
