#pragma once

#include "atlas/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace atlas {

class LaurentPolynomial;

/// Affine constraint <normal, x> (= or <=) offset with an integer normal.
struct HalfSpace {
    std::vector<long long> normal;
    long long offset = 0;

    bool operator==(const HalfSpace&) const = default;
};

/// Convex hull of a finite lattice point set in Z^n, n <= 3.
///
/// `vertices` are the extreme points: counterclockwise for a polygon in the plane,
/// a ring in the supporting plane for a planar polygon in space, lexicographic
/// otherwise. The H-representation (`equalities`, `facets`) is exact.
struct LatticePolytope {
    int dimension = 0;
    int affine_dimension = -1;
    std::vector<LatticePoint> vertices;
    std::vector<LatticePoint> generators;
    std::vector<HalfSpace> equalities;
    std::vector<HalfSpace> facets;

    bool contains(const LatticePoint& p) const;
    bool contains(std::span<const double> p, double tol = 1e-9) const;

    /// Twice the area of a full-dimensional polygon in the plane; 0 otherwise.
    long long doubled_area() const;
    double diameter() const;
};

/// Convex hull for n in {1, 2, 3}.
LatticePolytope convex_hull(const std::vector<LatticePoint>& points);

/// Counterclockwise hull ring in the plane; collinear input gives a segment and a
/// single point gives a point.
LatticePolytope convex_hull_2d(const std::vector<LatticePoint>& points);

/// All integer points of P (boundary included), sorted lexicographically. n <= 3.
std::vector<LatticePoint> lattice_points(const LatticePolytope& polytope);

/// A cell of a subdivision (or a user-specified polytope used as one).
struct Cell {
    std::vector<LatticePoint> vertices;
    /// Every configuration point lying on the cell's lifted facet; equals
    /// `vertices` for cells built from a vertex list.
    std::vector<LatticePoint> points;
    int affine_dimension = 0;
    /// Supporting lifted plane h = plane[0] + <plane[1..], alpha>; empty when unknown.
    std::vector<double> plane;
    LatticePolytope shape;

    static Cell from_vertices(const std::vector<LatticePoint>& vertices);

    bool is_simplex() const;
    bool contains(const LatticePoint& p) const { return shape.contains(p); }
};

/// Subdivision of conv(points) induced by the upper hull of the lifted points
/// (alpha, height). Cells are listed in lexicographic order of their vertex lists.
struct RegularSubdivision {
    LatticePolytope ambient;
    std::vector<Cell> cells;
    std::vector<LatticePoint> used_vertices;
    std::vector<LatticePoint> points;
    std::vector<double> heights;
};

/// Coplanarity tolerance on lifted heights.
inline constexpr double kHeightTolerance = 1e-9;

/// Requires n in {2, 3} and points affinely spanning R^n; throws InputError otherwise.
RegularSubdivision regular_subdivision(const std::vector<LatticePoint>& points,
                                       const std::vector<double>& heights);

/// Deterministic perturbation of heights by at most `magnitude`, used to force a
/// triangulation on request. Never applied implicitly.
std::vector<double> jitter_heights(const std::vector<double>& heights, std::uint64_t seed,
                                   double magnitude = 1e-7);

bool is_triangulation(const RegularSubdivision& subdivision);

struct ConcavityReport {
    bool concave = true;
    std::optional<LatticePoint> witness;
    /// Support misses lattice points of the Newton polytope; concavity was only
    /// checked on the support.
    bool sparse = false;
};

/// Whether every (alpha, log|a_alpha|) lies on the upper hull of the lifted support.
ConcavityReport is_concave_on_support(const LaurentPolynomial& f);

/// |a_alpha| >= 1 for every vertex alpha of the Newton polytope.
bool vertex_coefficient_bound(const LaurentPolynomial& f);

/// (v_i + v_j) / 2 for i < j. Throws InputError when the cell is not a simplex.
std::vector<RealPoint> edge_midpoints(const Cell& simplex);

/// Twice the signed area of a closed ring in the plane.
long long doubled_signed_area(const std::vector<LatticePoint>& ring);

/// Affine dimension of a lattice point set (-1 for the empty set).
int affine_dimension(const std::vector<LatticePoint>& points);

} // namespace atlas
