#pragma once

#include "atlas/amoeba.hpp"
#include "atlas/complex_limit.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/point_cloud.hpp"
#include "atlas/poly.hpp"
#include "atlas/tropical.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace atlas {

using Json = nlohmann::ordered_json;

/// `{"n":2,"terms":[{"exp":[1,0],"re":1.0,"im":0.0},...]}`
Json polynomial_to_json(const LaurentPolynomial& f);
LaurentPolynomial polynomial_from_json(const Json& j);

/// `{"cells":[{"vertices":[[1,0],[0,1],[1,1]]},...]}`
Json subdivision_to_json(const RegularSubdivision& s);
std::vector<std::vector<LatticePoint>> subdivision_cells_from_json(const Json& j);

/// Vertices, edges as index pairs, rays as vertex index plus direction.
struct CurveData {
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::pair<std::size_t, std::array<long long, 2>>> rays;

    bool operator==(const CurveData&) const = default;
};

CurveData curve_data(const TropicalCurve& c);
Json curve_to_json(const CurveData& c);
CurveData curve_from_json(const Json& j);

/// Window, resolution and run-length encoded occupancy: `runs` lists [start, length]
/// pairs of occupied cells in linear index order.
Json raster_to_json(const AmoebaRaster& r);
AmoebaRaster raster_from_json(const Json& j);

/// `{"ambient":"polytope","points":[[0.31,0.42],...]}`
Json cloud_to_json(const PointCloud& c);
PointCloud cloud_from_json(const Json& j);

/// `{"cells":[{"vertices":[[0.5,0.0],...],"dual_simplex":[[0,0],[1,0],[0,1]]}]}`
Json complex_to_json(const PolyhedralComplex& c);
PolyhedralComplex complex_from_json(const Json& j);

/// r values, consecutive distances, eps and the converged flag. The cloud itself is
/// written separately.
Json convergence_to_json(const LimitEstimate& e);
LimitEstimate convergence_from_json(const Json& j);

/// Verdict, order sets and order -> evidence. Component cell lists are omitted.
Json classification_to_json(const Classification& c);
Classification classification_from_json(const Json& j);

Json hypotheses_to_json(const HypothesisReport& h);
HypothesisReport hypotheses_from_json(const Json& j);

Json complement_to_json(const ComplementReport& r);

Json pi0_to_json(const Pi0Report& r);
Pi0Report pi0_from_json(const Json& j);

/// Compact text with a trailing newline.
std::string dump(const Json& j);

} // namespace atlas
