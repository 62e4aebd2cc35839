#pragma once

#include <optional>
#include <vector>

namespace polygpt::geom {

/// Closed halfspace {x in R^d : normal . x <= offset}.
struct HalfSpaceD {
    std::vector<double> normal;
    double offset = 0.0;

    HalfSpaceD() = default;
    HalfSpaceD(std::vector<double> n, double off);

    std::size_t dim() const { return normal.size(); }
};

/// Pure feasibility question over free variables. Equality constraints are
/// encoded as two opposing inequalities.
struct FeasibilityProblem {
    int num_vars = 0;
    std::vector<HalfSpaceD> constraints;
};

enum class FeasibilityStatus {
    kFeasible,
    kInfeasible,
    /// Solver could not certify either answer (cycling guard or a witness
    /// that fails verification). Distinct from infeasible by contract.
    kDegenerate,
};

struct FeasibilityResult {
    FeasibilityStatus status = FeasibilityStatus::kDegenerate;
    std::optional<std::vector<double>> witness;

    bool feasible() const { return status == FeasibilityStatus::kFeasible; }
};

/// Phase-1 simplex with Bland's anti-cycling rule. Deterministic for a fixed
/// input; returns a witness point when feasible.
FeasibilityResult lp_feasible(const FeasibilityProblem& prob);

enum class PolytopeStatus {
    kOk,
    kEmpty,
    kUnbounded,
};

struct VertexEnumeration {
    PolytopeStatus status = PolytopeStatus::kOk;
    std::vector<std::vector<double>> vertices;
};

/// Enumerates vertices of the polytope {x : h.normal . x <= h.offset for all
/// h} by solving all d-subsets of active constraints (desk scale). Vertices
/// are deduplicated to 1e-7 and each reported point satisfies every halfspace
/// within 1e-9 after normal normalization. Detects empty and unbounded
/// inputs instead of returning vertices.
VertexEnumeration enumerate_polytope_vertices(const std::vector<HalfSpaceD>& halfspaces,
                                              int d);

/// Solves the square system A x = b by Gaussian elimination with partial
/// pivoting. Returns nullopt when the matrix is numerically singular.
std::optional<std::vector<double>> solve_linear_system(std::vector<std::vector<double>> a,
                                                       std::vector<double> b);

/// Facet halfspaces (unit normals) of the convex hull of a full-dimensional
/// 3D point cloud, by brute force over point triples.
std::vector<HalfSpaceD> convex_hull_facets_3d(const std::vector<std::vector<double>>& points);

/// True iff `point` lies in the convex hull of `generators` within tol
/// (decided by lp_feasible over barycentric weights).
bool in_convex_hull(const std::vector<std::vector<double>>& generators,
                    const std::vector<double>& point, double tol = 1e-9);

}  // namespace polygpt::geom
