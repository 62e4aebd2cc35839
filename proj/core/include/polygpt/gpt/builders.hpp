#pragma once

#include "polygpt/gpt/theory.hpp"

namespace polygpt {

/// n-level classical theory: simplex state space, hypercube effect space
/// with 2^n extremal effects. Rejects n < 2 and n > 12.
Theory build_classical_theory(int n);

/// The square bit (gbit): four-outcome classical theory restricted by
/// e1 + e2 = e3 + e4, converted to d = 3 coordinates. The original
/// 4-coordinate presentation is kept for display.
Theory build_square_bit();

/// Regular n-gon theory in normal parametrization: pure states at unit
/// radius on the plane z = 1, effect polytope enumerated from them.
/// Rejects n < 3.
Theory build_regular_polygon_theory(int n);

/// Effect-space-first counterexample: hexagonal ring of unbiased extremals
/// with the (+x, -x) pair displaced by +-delta along z. Complement closure
/// survives but no reflecting hyperplane exists. Requires 0 < delta < 1/2.
Theory build_displaced_hexagon(double delta);

}  // namespace polygpt
