#pragma once

#include "atlas/lattice_geom.hpp"
#include "atlas/types.hpp"

#include <array>
#include <span>
#include <vector>

namespace atlas {

class LaurentPolynomial;

/// max_i (h_i + <alpha_i, zeta>) with h_i = log|a_i|.
struct TropicalPolynomial {
    std::vector<LatticePoint> exponents;
    std::vector<double> heights;

    /// Heights r * log|a_s|, i.e. the tropicalization of the Hadamard power f^[r].
    static TropicalPolynomial from(const LaurentPolynomial& f, double r = 1.0);
};

struct TropicalValue {
    double value = 0.0;
    std::vector<LatticePoint> argmax;
};

/// Tie tolerance shared with the lifted-height tolerance of the subdivision code.
inline constexpr double kTropicalTieTolerance = kHeightTolerance;

TropicalValue tropical_eval(const TropicalPolynomial& t, std::span<const double> zeta);

struct TropicalEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    /// Dual edge of the subdivision (endpoints of the shared cell edge).
    std::array<LatticePoint, 2> dual;
};

struct TropicalRay {
    std::size_t vertex = 0;
    /// Primitive integer direction: outward normal of the dual boundary edge.
    std::array<long long, 2> direction{};
    std::array<LatticePoint, 2> dual;
};

/// Corner locus of a planar tropical polynomial, built from the dual subdivision.
/// Vertex i is dual to subdivision.cells[i].
struct TropicalCurve {
    std::vector<std::array<double, 2>> vertices;
    std::vector<TropicalEdge> edges;
    std::vector<TropicalRay> rays;
    RegularSubdivision subdivision;
};

/// Requires n = 2. A single monomial gives an empty curve; collinear exponents
/// throw InputError.
TropicalCurve tropical_curve_2d(const TropicalPolynomial& t);

/// Exponents whose dominance region has nonempty interior (the used vertices of
/// the dual regular subdivision).
std::vector<LatticePoint> tropical_orders(const TropicalPolynomial& t);

/// Lattice length of a segment: gcd of the coordinate differences.
long long lattice_length(const LatticePoint& a, const LatticePoint& b);

} // namespace atlas
