#pragma once

#include "atlas/amoeba.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/moment.hpp"
#include "atlas/point_cloud.hpp"
#include "atlas/poly.hpp"
#include "atlas/raster.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace atlas {

struct HypothesisReport {
    bool vertex_bound = false;
    bool concave = false;
    std::optional<LatticePoint> concavity_witness;
    /// Some lattice point of N is missing from the support; concavity was checked
    /// on the support only.
    bool sparse = false;
    bool triangulation = false;

    bool eligible() const { return vertex_bound && concave && triangulation; }
};

HypothesisReport check_hypotheses(const LaurentPolynomial& f);

/// Subdivision of N induced by the lifted support (alpha, log|a_alpha|); with a
/// seed the heights are jittered first.
RegularSubdivision coefficient_subdivision(const LaurentPolynomial& f,
                                           std::optional<std::uint64_t> jitter_seed = std::nullopt);

struct ComplexCell {
    /// Counterclockwise ring in the plane; lexicographic order in space.
    std::vector<RealPoint> vertices;
    std::vector<LatticePoint> dual_simplex;

    bool operator==(const ComplexCell&) const = default;
};

struct PolyhedralComplex {
    int dimension = 2;
    std::vector<ComplexCell> cells;

    bool operator==(const PolyhedralComplex&) const = default;
};

/// Union over the maximal simplices of the coefficient subdivision of the convex
/// hulls of their edge midpoints. Throws RefusalError when the subdivision is not a
/// triangulation and InputError for n > 3.
PolyhedralComplex direct_complex(const LaurentPolynomial& f,
                                 std::optional<std::uint64_t> jitter_seed = std::nullopt);

/// Index pairs of the 1-skeleton of one cell.
std::vector<std::pair<std::size_t, std::size_t>> cell_edges(const ComplexCell& cell);

/// Pairs of planar cells meeting outside their common vertices (empty when the
/// complex is well formed).
std::vector<std::string> adjacency_violations(const PolyhedralComplex& complex);

/// Closed point-in-complex test for planar complexes.
bool complex_contains(const PolyhedralComplex& complex, std::span<const double> p, double tol = 1e-12);

/// Points on a barycentric grid of every planar cell with spacing at most `spacing`.
PointCloud dense_sample(const PolyhedralComplex& complex, double spacing);

struct LimitEstimate {
    PointCloud cloud;
    std::vector<double> schedule;
    /// Hausdorff distance between consecutive clouds.
    std::vector<double> distances;
    double eps = 0.0;
    bool converged = false;
    /// Index i of the first pair (i, i+1) closer than eps.
    std::optional<std::size_t> converged_at;
    /// The hypotheses that guarantee a polyhedral limit fail.
    bool experimental = false;
};

std::vector<double> default_schedule();

/// Weighted compactified amoebas along the schedule; returns the last cloud. eps
/// defaults to 0.02 diam(N).
LimitEstimate limit_complex_estimate(const LaurentPolynomial& f, const std::vector<double>& schedule = default_schedule(),
                                     std::optional<double> eps = std::nullopt, const MomentSampling& sampling = {});

struct ComplementRegion {
    RealPoint representative;
    std::size_t cells = 0;
    std::vector<LatticePoint> lattice_points;
    /// The single contained lattice point; empty when there are none or several.
    std::optional<LatticePoint> order;
};

struct ComplementReport {
    Grid grid;
    std::vector<ComplementRegion> components;
    std::vector<LatticePoint> on_complex;
    /// Lattice points off the complex that could not be attached to a component.
    std::vector<LatticePoint> unassigned;
    /// Free regions less than two cells thick (raster artifacts in narrow wedges);
    /// not counted as components.
    std::size_t slivers = 0;

    /// Components with zero or several lattice points.
    std::size_t flagged() const;
};

/// Flood fill of N minus the complex on a resolution x resolution grid over the
/// bounding box of N. Cells meeting the closed complex are blocked; free cells
/// with centers in N are joined 8-connectedly, which cannot bridge the complex
/// because a move between neighbouring centers stays inside the two closed cells.
ComplementReport complement_analysis(const PolyhedralComplex& complex, const LaurentPolynomial& f,
                                     int resolution = 600);

/// Same for a sampled set: cells holding a point are blocked and grown by
/// `dilation` cells.
ComplementReport complement_analysis(const PointCloud& cloud, const LaurentPolynomial& f, int resolution = 200,
                                     int dilation = 1);

struct Pi0Options {
    ClassifyOptions classify;
    int complex_resolution = 600;
    int cloud_resolution = 200;
    int cloud_dilation = 1;
    std::vector<double> schedule = default_schedule();
    MomentSampling sampling;
};

struct Pi0Report {
    /// "direct" or "limit".
    std::string method;
    std::size_t affine_count = 0;
    std::vector<LatticePoint> affine_orders;
    std::size_t polytope_count = 0;
    std::vector<LatticePoint> polytope_orders;
    bool match = false;
    /// "match", "mismatch" or "indeterminate".
    std::string verdict;
    std::vector<std::string> notes;
};

/// Components of the affine amoeba complement against those of N minus the
/// direct complex (or, when that is refused, minus the limit cloud).
Pi0Report pi0_compare(const LaurentPolynomial& f, const Pi0Options& options = {});

} // namespace atlas
