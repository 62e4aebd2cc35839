#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polygpt/geom/polygon.hpp"
#include "polygpt/gpt/theory.hpp"

namespace polygpt {

/// Outcome of a coexistence decision. A feasible oracle verdict carries the
/// witness decomposition (g1, g2, g3) with g1 + g2 = e and g1 + g3 = f; a
/// criterion verdict carries the binding (k1, k2) constraint indices and the
/// minimum slack of the inequality family.
struct CoexistenceVerdict {
    bool coexistent = false;
    std::optional<std::array<Effect, 3>> witness;
    std::vector<std::pair<int, int>> binding;
    std::optional<double> slack;
};

/// Closed-form criterion for two unbiased effects of the even n-gon theory:
/// for all k1, k2 the combined support inequality
///   (f-e).u(2*k1*pi/n) + (f+e).u(2*k2*pi/n) <= 1
/// must hold (closed boundary, +1e-9 slack). Rejects odd n and effects
/// outside the unbiased polygon.
bool coexist_criterion_even_polygon(int n, const geom::Vec2& e, const geom::Vec2& f);

/// Criterion with slack and binding-index reporting. slack = min over
/// (k1, k2) of (1 - lhs); coexistent iff slack >= -1e-9. `binding` lists the
/// violated pairs when negative, the saturated pairs (|1 - lhs| <= 1e-9)
/// otherwise.
CoexistenceVerdict criterion_verdict(int n, const geom::Vec2& e, const geom::Vec2& f);

/// Definition-level oracle: feasibility of g1 + g2 = e, g1 + g3 = f with all
/// marginals (g1, g2, g3 and u - g1 - g2 - g3) inside the effect space.
/// Solved as a linear feasibility problem in g1 after exact substitution of
/// the equality constraints.
CoexistenceVerdict coexist_oracle(const Theory& t, const Effect& e, const Effect& f);

/// Report for the planar coexistence region of a fixed unbiased effect.
struct RegionReport {
    int n = 0;
    geom::Vec2 fixed_effect;
    geom::ConvexPolygon2D region;
    double area = 0.0;
    geom::ConvexPolygon2D clipped_to;  // the unbiased polygon
};

/// Region of unbiased effects coexistent with e: the unbiased polygon
/// clipped by the n^2 criterion halfplanes.
RegionReport coexistence_region(int n, const geom::Vec2& e);

/// Pair of Bloch vectors for Busch's unbiased-qubit criterion.
struct BuschEffectPair {
    std::array<double, 3> lambda1{};
    std::array<double, 3> lambda2{};

    BuschEffectPair(const std::array<double, 3>& l1, const std::array<double, 3>& l2);
    BuschEffectPair(const geom::Vec2& l1, const geom::Vec2& l2);
};

/// ||l1 + l2||/2 + ||l1 - l2||/2 <= 1 with closed boundary.
bool busch_coexistent(const BuschEffectPair& p);

/// Planar form of the same criterion in normal-parametrization coordinates:
/// ||e + f|| + ||e - f|| <= 1 for effects in the radius-1/2 disk.
bool busch_planar_region_membership(const geom::Vec2& e, const geom::Vec2& f);

/// Bloch vector of an unbiased planar effect and back (lambda = 2 e).
geom::Vec2 bloch_from_unbiased(const geom::Vec2& e);
geom::Vec2 unbiased_from_bloch(const geom::Vec2& lambda);

/// Relative gap between the polygon coexistence-region area at e and the
/// limiting Busch ellipse area pi/2 * sqrt(1/4 - |e|^2). Requires |e| < 1/2.
double quantum_limit_gap(int n, const geom::Vec2& e);

/// Corners (o, e, complement(e), u) of the coexistence parallelogram of a
/// nontrivial extremal effect on the reflecting hyperplane.
std::array<Effect, 4> extremal_coexistence_set(const Theory& t, const Effect& e);

/// Membership of f in conv{o, e, complement(e), u}, decided by the 2-variable
/// solve f = s e + t complement(e) with s, t in [0, 1] and small residual.
bool in_extremal_coexistence_set(const Theory& t, const Effect& e, const Effect& f,
                                 double tol = 1e-7);

/// Deterministic uniform samples inside the effect polytope (rejection
/// sampling over the bounding box, substream-seeded per attempt).
std::vector<Effect> sample_effects_in_polytope(const Theory& t, int count,
                                               std::uint64_t seed);

/// Fraction of sampled effects that the oracle reports coexistent with e.
/// Deterministic for a fixed seed. Requires samples >= 1000 and d = 3.
double coexistence_volume_fraction(const Theory& t, const Effect& e, int samples,
                                   std::uint64_t seed);

/// Cross-section at height z = l of the lower set {g : o <= g <= e} for an
/// unbiased effect of the even n-gon theory: R_l(0) intersected with
/// R_(1/2 - l)(e_xy). Requires 0 <= l <= 1/2.
geom::ConvexPolygon2D lower_set_slice(const Theory& t, const Effect& e, double l);

}  // namespace polygpt
