#include "atlas/tropical.hpp"

#include "atlas/error.hpp"
#include "atlas/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace atlas {

namespace {

long long orient(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    return (static_cast<long long>(b[0]) - a[0]) * (static_cast<long long>(c[1]) - a[1]) -
           (static_cast<long long>(b[1]) - a[1]) * (static_cast<long long>(c[0]) - a[0]);
}

/// Boundary of a 2-cell as consecutive configuration points, counterclockwise.
std::vector<std::array<LatticePoint, 2>> boundary_edges(const Cell& cell) {
    std::vector<std::array<LatticePoint, 2>> out;
    const auto& ring = cell.vertices;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& p = ring[i];
        const auto& q = ring[(i + 1) % ring.size()];
        std::vector<std::pair<long long, LatticePoint>> on;
        for (const auto& r : cell.points) {
            if (orient(p, q, r) != 0) {
                continue;
            }
            long long t = (static_cast<long long>(r[0]) - p[0]) * (q[0] - p[0]) +
                          (static_cast<long long>(r[1]) - p[1]) * (q[1] - p[1]);
            long long len = (static_cast<long long>(q[0]) - p[0]) * (q[0] - p[0]) +
                            (static_cast<long long>(q[1]) - p[1]) * (q[1] - p[1]);
            if (t >= 0 && t <= len) {
                on.emplace_back(t, r);
            }
        }
        std::sort(on.begin(), on.end());
        for (std::size_t k = 0; k + 1 < on.size(); ++k) {
            out.push_back({on[k].second, on[k + 1].second});
        }
    }
    return out;
}

std::vector<LatticePoint> collinear_orders(const TropicalPolynomial& t) {
    // parametrize along the line through the exponents
    const auto& e = t.exponents;
    std::size_t far = 1;
    while (far < e.size() && e[far] == e[0]) {
        ++far;
    }
    LatticePoint d = {e[far][0] - e[0][0], e[far][1] - e[0][1]};
    std::vector<std::size_t> order(e.size());
    std::iota(order.begin(), order.end(), 0);
    auto param = [&](std::size_t i) {
        return static_cast<double>((e[i][0] - e[0][0]) * d[0] + (e[i][1] - e[0][1]) * d[1]);
    };
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return param(a) < param(b); });
    std::vector<std::size_t> hull;
    for (auto i : order) {
        while (hull.size() >= 2) {
            auto a = hull[hull.size() - 2];
            auto b = hull.back();
            double cr = (param(b) - param(a)) * (t.heights[i] - t.heights[a]) -
                        (t.heights[b] - t.heights[a]) * (param(i) - param(a));
            if (cr >= -kTropicalTieTolerance) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(i);
    }
    std::vector<LatticePoint> out;
    for (auto i : hull) {
        out.push_back(e[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TropicalPolynomial TropicalPolynomial::from(const LaurentPolynomial& f, double r) {
    TropicalPolynomial t;
    for (const auto& term : f.terms()) {
        t.exponents.push_back(term.exponent);
        t.heights.push_back(r * std::log(std::abs(term.coefficient)));
    }
    return t;
}

long long lattice_length(const LatticePoint& a, const LatticePoint& b) {
    long long g = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        g = std::gcd(g, std::llabs(static_cast<long long>(a[i]) - b[i]));
    }
    return g;
}

TropicalValue tropical_eval(const TropicalPolynomial& t, std::span<const double> zeta) {
    if (t.exponents.empty() || t.exponents.size() != t.heights.size()) {
        throw InputError("malformed tropical polynomial");
    }
    std::vector<double> vals(t.exponents.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double v = t.heights[i];
        for (std::size_t k = 0; k < zeta.size(); ++k) {
            v += t.exponents[i][k] * zeta[k];
        }
        vals[i] = v;
        best = std::max(best, v);
    }
    TropicalValue out{best, {}};
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] >= best - kTropicalTieTolerance) {
            out.argmax.push_back(t.exponents[i]);
        }
    }
    std::sort(out.argmax.begin(), out.argmax.end());
    return out;
}

TropicalCurve tropical_curve_2d(const TropicalPolynomial& t) {
    TropicalCurve curve;
    if (t.exponents.empty()) {
        throw InputError("empty tropical polynomial");
    }
    if (t.exponents[0].size() != 2) {
        throw InputError("tropical curves are computed in the plane only");
    }
    if (t.exponents.size() == 1) {
        return curve;
    }
    if (affine_dimension(t.exponents) < 2) {
        throw InputError("degenerate span: exponents are collinear");
    }
    curve.subdivision = regular_subdivision(t.exponents, t.heights);
    const auto& cells = curve.subdivision.cells;

    std::map<std::array<LatticePoint, 2>, std::vector<std::pair<std::size_t, std::array<LatticePoint, 2>>>> by_edge;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        curve.vertices.push_back({-cells[c].plane[1], -cells[c].plane[2]});
        for (auto& e : boundary_edges(cells[c])) {
            std::array<LatticePoint, 2> key = e;
            if (key[1] < key[0]) {
                std::swap(key[0], key[1]);
            }
            by_edge[key].emplace_back(c, e);
        }
    }
    for (const auto& [key, uses] : by_edge) {
        if (uses.size() == 2) {
            curve.edges.push_back({uses[0].first, uses[1].first, key});
        } else {
            const auto& [c, e] = uses[0];
            long long dx = static_cast<long long>(e[1][0]) - e[0][0];
            long long dy = static_cast<long long>(e[1][1]) - e[0][1];
            long long g = std::gcd(std::llabs(dx), std::llabs(dy));
            curve.rays.push_back({c, {dy / g, -dx / g}, key});
        }
    }
    return curve;
}

std::vector<LatticePoint> tropical_orders(const TropicalPolynomial& t) {
    if (t.exponents.size() == 1) {
        return t.exponents;
    }
    if (affine_dimension(t.exponents) < static_cast<int>(t.exponents[0].size())) {
        if (t.exponents[0].size() != 2) {
            throw InputError("tropical_orders expects planar exponents");
        }
        return collinear_orders(t);
    }
    return regular_subdivision(t.exponents, t.heights).used_vertices;
}

} // namespace atlas
