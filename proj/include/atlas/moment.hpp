#pragma once

#include "atlas/point_cloud.hpp"
#include "atlas/poly.hpp"
#include "atlas/raster.hpp"
#include "atlas/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace atlas {

/// mu_S(x) = sum s |x^s| / sum |x^s|, computed from u = Log|x| by softmax.
RealPoint moment_map(const std::vector<LatticePoint>& support, std::span<const Complex> x);
RealPoint moment_map_log(const std::vector<LatticePoint>& support, std::span<const double> u);

/// mu_f(x) = sum s |a_s||x^s| / sum |a_s||x^s|, logits log|a_s| + <s, u>.
RealPoint weighted_moment_map(const LaurentPolynomial& f, std::span<const Complex> x);
RealPoint weighted_moment_map_log(const LogPolynomial& f, std::span<const double> u);

struct MomentSampling {
    /// Log-space window for r = 1; defaults to the tropical vertex box. For order
    /// r the window is scaled by r, then padded.
    std::optional<Window> window;
    double pad = 10.0;
    int slices = 400;
    int thetas = 256;
    /// Slice clusters around r times each tropical vertex.
    int focus_slices = 81;
    double focus_radius = 10.0;
    /// Points closer than this fraction of diam(N) are merged (first one kept).
    double merge_fraction = 1e-3;
};

/// mu_S of the sampled hypersurface. Polytope-space cloud, lexicographically sorted.
PointCloud compactified_amoeba(const LaurentPolynomial& f, const MomentSampling& sampling = {});

/// Weighted compactified amoeba of f^[r]: roots are solved on the log form of the
/// Hadamard power, and weights come from the logits r log|a_s| + <s, u>.
PointCloud wca(const LaurentPolynomial& f, double r, const MomentSampling& sampling = {});

} // namespace atlas
