#pragma once

#include <string>
#include <vector>

#include "polygpt/coex/coexistence.hpp"
#include "polygpt/gpt/theory.hpp"

namespace polygpt {

inline constexpr const char* kToolVersion = "0.1.0";

struct LimitRow {
    int n = 0;
    double area = 0.0;
    double ellipse_area = 0.0;
    double relative_gap = 0.0;
};

/// One row per requested n for a fixed effect inside the radius-1/2 disk.
std::vector<LimitRow> compute_limit_rows(const geom::Vec2& e, const std::vector<int>& ns);

/// Agreement of contains_point(region, f) with the closed-form criterion on
/// a probe grid over the unbiased polygon. Pairs within the 1e-6 slack band
/// are counted separately.
struct ProbeStats {
    int agree = 0;
    int band = 0;
    int disagree = 0;
};
ProbeStats region_probe_stats(const RegionReport& rep, int grid = 50);

/// CSV of region vertices with metadata header lines (# key=value), full
/// 17-significant-digit precision, byte-deterministic.
std::string region_csv(const RegionReport& rep);

/// 600x600 SVG over the window [-0.75, 0.75]^2: unbiased polygon filled
/// #e8e8e8 with #1f6fb4 outline and center dot, coexistence region filled
/// #ffffff, fixed effect as a #2ca02c dot.
std::string region_svg(const RegionReport& rep);

std::string limit_csv(const geom::Vec2& e, const std::vector<LimitRow>& rows);

/// CSV listing of a theory's extremal effects.
std::string effects_csv(const Theory& t);

/// Short human-readable description (extremal counts, hyperplane status).
std::string theory_summary(const Theory& t);

}  // namespace polygpt
