#pragma once

#include "atlas/amoeba.hpp"
#include "atlas/complex_limit.hpp"
#include "atlas/point_cloud.hpp"
#include "atlas/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace atlas {

struct CloudLayer {
    PointCloud cloud;
    std::string color = "#1f4e9c";
};

/// Planar cells drawn as one filled path.
struct ComplexLayer {
    PolyhedralComplex complex;
    std::string fill = "#d9534f";
};

struct LatticeLayer {
    std::vector<LatticePoint> points;
    bool labels = true;
};

/// Closed polygon outline in polytope space (typically the Newton polygon).
struct OutlineLayer {
    std::vector<RealPoint> ring;
};

/// Occupied cells of an amoeba raster, merged into row runs.
struct RasterLayer {
    AmoebaRaster raster;
    std::string fill = "#7a9cc6";
};

using Layer = std::variant<CloudLayer, ComplexLayer, LatticeLayer, OutlineLayer, RasterLayer>;

struct SvgStyle {
    int width = 480;
    int height = 480;
    double margin = 24.0;
    double dot = 1.6;
};

struct Panel {
    std::string title;
    std::vector<Layer> layers;
};

/// One panel. Layers are drawn in order under a shared viewport fitted to their
/// union. Throws InputError when layers mix log and polytope space.
std::string render_svg(const std::vector<Layer>& layers, const SvgStyle& style = {});

/// Panels side by side, each with its own viewport.
std::string render_panels(const std::vector<Panel>& panels, const SvgStyle& style = {});

/// Convex hull ring of N as an outline layer.
OutlineLayer newton_outline(const LaurentPolynomial& f);

} // namespace atlas
