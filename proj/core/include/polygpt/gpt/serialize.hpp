#pragma once

#include <string>

#include "polygpt/gpt/theory.hpp"

namespace polygpt {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

/// JSON document for a theory:
///   {name, d, extremal_states, unit, zero, extremal_effects,
///    reflecting_hyperplane?}
/// Numbers carry 17 significant digits and the field order is fixed, so the
/// output is byte-deterministic. An empty extremal_states list marks an
/// effect-space-first theory.
std::string theory_to_json(const Theory& t);

/// Parses a theory document. Halfspace descriptions are rebuilt from the
/// states (or from hull facets when states are absent); extremal effects are
/// re-enumerated when the field is missing; the reflecting hyperplane is
/// re-detected when absent.
Theory theory_from_json(const std::string& text);

Theory load_theory_file(const std::string& path);

}  // namespace polygpt
