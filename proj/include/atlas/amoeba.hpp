#pragma once

#include "atlas/numerics.hpp"
#include "atlas/point_cloud.hpp"
#include "atlas/poly.hpp"
#include "atlas/raster.hpp"
#include "atlas/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace atlas {

/// Roots of f in one variable with the other variable fixed on a circle, for a
/// planar polynomial in log form. The fiber polynomial is multiplied by t^-d_min.
class FiberSolver {
public:
    /// variable 0 solves for x (y fixed), variable 1 solves for y (x fixed).
    /// Throws InputError when f does not depend on that variable.
    FiberSolver(const LogPolynomial& f, int variable);

    /// Roots t with the other coordinate at exp(u + i theta).
    LogRootSet solve(double u, double theta) const;

    int variable() const { return variable_; }
    int min_degree() const { return min_degree_; }
    int degree() const { return degree_; }

private:
    struct Piece {
        int other_exponent;
        double log_modulus;
        double phase;
    };
    int variable_;
    int min_degree_ = 0;
    int degree_ = 0;
    std::vector<std::vector<Piece>> groups_;
};

/// Point of the hypersurface in (C*)^2 as log moduli and arguments.
struct TorusPoint {
    std::array<double, 2> log_modulus{};
    std::array<double, 2> phase{};
};

struct SamplingPlan {
    Window window;
    int slices = 400;
    int thetas = 256;
    /// Extra slice clusters: for each center c, `focus_slices` slices per axis
    /// spread over c +- focus_radius, densest at c (sinh spacing).
    std::vector<std::array<double, 2>> focus;
    double focus_radius = 10.0;
    int focus_slices = 81;
    /// Consecutive samples of one root branch further apart than this (in log
    /// units, inside the window) trigger angle bisection, up to max_depth levels.
    double max_jump = 0.25;
    int max_depth = 6;
};

/// Column sweeps (x fixed, solve for y) and row sweeps (y fixed, solve for x) over
/// the plan; keeps the points whose log image lies in the window. Order is
/// deterministic.
std::vector<TorusPoint> sample_hypersurface(const LogPolynomial& f, const SamplingPlan& plan);
std::vector<TorusPoint> sample_hypersurface(const LaurentPolynomial& f, const SamplingPlan& plan);

PointCloud log_image(const std::vector<TorusPoint>& points);

/// Rasterized amoeba. A cell is occupied when the amoeba meets the vertical line
/// through its center (column sweeps) or the horizontal one (row sweeps), so a
/// 4-connected path of free cell centers never crosses the amoeba.
struct AmoebaRaster {
    Grid grid;
    std::vector<std::uint8_t> occupancy;
    /// Log images of every fiber root evaluated inside the window.
    PointCloud source{Ambient::LogSpace, 2, {}};
    /// Branch segments still longer than one cell at the bisection limit; these
    /// were filled without intermediate samples.
    std::size_t interval_fills = 0;

    std::size_t occupied_count() const;
};

struct RasterOptions {
    int resolution = 400;
    int thetas = 256;
    int max_depth = 12;
    bool keep_source = true;
};

AmoebaRaster amoeba_points(const LaurentPolynomial& f, const Window& window, const RasterOptions& options = {});

/// Tropical vertex bounding box padded by `pad` log units.
Window default_window(const LaurentPolynomial& f, double pad = 3.0);

struct Membership {
    bool inside = false;
    /// Smallest log distance from u to a fiber root over the angle grid.
    double distance = 0.0;
};

Membership membership(const LaurentPolynomial& f, std::span<const double> u, double tol, int thetas = 256);

struct OrderResult {
    std::optional<LatticePoint> order;
    /// Closest root log-modulus to the counting circle over all draws.
    double clearance = 0.0;
    /// Per-draw counts disagreed, or a root sat on the counting circle.
    bool indeterminate = false;
};

/// Order of the complement component through u: nu_j = d_min + #{fiber roots in
/// variable j with |t| < e^{u_j}}, the other variable on |x_k| = e^{u_k} with a
/// seeded random argument. All `draws` draws must agree.
OrderResult order_of_point(const LogPolynomial& f, std::span<const double> u, int draws = 8, std::uint64_t seed = 1);
OrderResult order_of_point(const LaurentPolynomial& f, std::span<const double> u, int draws = 8,
                           std::uint64_t seed = 1);

struct ComplementComponent {
    RealPoint representative;
    std::vector<std::size_t> cells;
    std::optional<LatticePoint> order;
    bool bounded = false;
    /// Log distance from the representative to the nearest occupied cell center.
    double clearance = 0.0;
    std::string source = "raster";
};

/// Flood-fill components of the free cells; components touching the window edge
/// are unbounded. Each representative is the free cell center of largest clearance.
std::vector<ComplementComponent> complement_components(const LaurentPolynomial& f, const AmoebaRaster& raster,
                                                       int draws = 8, std::uint64_t seed = 1);

/// Clearance of every cell: distance from its center to the nearest occupied
/// center (chamfer approximation; 0 on occupied cells).
std::vector<double> clearance_map(const AmoebaRaster& raster);

/// Up to `count` distinct free cell centers with clearance above `min_clearance`,
/// drawn with a seeded generator.
std::vector<RealPoint> complement_probes(const AmoebaRaster& raster, std::size_t count, double min_clearance,
                                         std::uint64_t seed);

enum class Verdict { Solid, Optimal, Neither, Indeterminate };

std::string verdict_name(Verdict v);

struct OrderEvidence {
    LatticePoint order;
    bool realized = false;
    /// Any of "vertex", "margin", "raster", "zoom".
    std::vector<std::string> sources;
    std::optional<MarginResult> margin;
};

struct ClassifyOptions {
    std::optional<Window> window;
    RasterOptions raster;
    int draws = 8;
    std::uint64_t seed = 1;
    /// Resolution of the local rasters used for orders the main raster missed.
    int zoom_resolution = 200;
};

struct Classification {
    Verdict verdict = Verdict::Indeterminate;
    bool solid = false;
    bool optimal = false;
    std::vector<LatticePoint> vertices;
    std::vector<LatticePoint> lattice_points;
    std::vector<LatticePoint> realized;
    std::vector<LatticePoint> missing;
    std::vector<OrderEvidence> evidence;
    std::vector<ComplementComponent> components;
    Window window;
    std::size_t interval_fills = 0;
    /// Reasons for an indeterminate verdict.
    std::vector<std::string> notes;
};

/// Realized orders from the vertices of N, margin certificates, raster components
/// and zoomed local rasters over the tropical regions of orders still missing.
Classification classify(const LaurentPolynomial& f, const ClassifyOptions& options = {});

} // namespace atlas
