#include "atlas/complex_limit.hpp"

#include "atlas/error.hpp"
#include "atlas/numerics.hpp"
#include "atlas/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace atlas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Polygon = std::vector<RealPoint>;

double cross(const RealPoint& o, const RealPoint& a, const RealPoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool polygon_contains(const Polygon& poly, std::span<const double> p, double tol) {
    RealPoint q(p.begin(), p.end());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (cross(poly[i], poly[(i + 1) % poly.size()], q) < -tol) {
            return false;
        }
    }
    return true;
}

/// Closed rectangle against closed convex polygon, separating axis test.
bool rect_meets_polygon(double x0, double x1, double y0, double y1, const Polygon& poly) {
    const double tol = 1e-12;
    double px0 = kInf;
    double px1 = -kInf;
    double py0 = kInf;
    double py1 = -kInf;
    for (const auto& v : poly) {
        px0 = std::min(px0, v[0]);
        px1 = std::max(px1, v[0]);
        py0 = std::min(py0, v[1]);
        py1 = std::max(py1, v[1]);
    }
    if (px1 < x0 - tol || px0 > x1 + tol || py1 < y0 - tol || py0 > y1 + tol) {
        return false;
    }
    const double cx[4] = {x0, x1, x1, x0};
    const double cy[4] = {y0, y0, y1, y1};
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        double nx = b[1] - a[1];
        double ny = a[0] - b[0];
        // outward normal of a ccw ring; rectangle entirely outside this edge?
        double lim = nx * a[0] + ny * a[1];
        bool outside = true;
        for (int k = 0; k < 4; ++k) {
            if (nx * cx[k] + ny * cy[k] <= lim + tol) {
                outside = false;
                break;
            }
        }
        if (outside) {
            return false;
        }
    }
    return true;
}

/// Whether the closed segment pq meets the closed convex polygon (Cyrus-Beck).
bool segment_meets_polygon(const RealPoint& p, const RealPoint& q, const Polygon& poly) {
    double t0 = 0.0;
    double t1 = 1.0;
    RealPoint d{q[0] - p[0], q[1] - p[1]};
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        // inside: cross(a, b, x) >= 0
        double fp = cross(a, b, p);
        double fd = (b[0] - a[0]) * d[1] - (b[1] - a[1]) * d[0];
        if (std::abs(fd) < 1e-300) {
            if (fp < -1e-12) {
                return false;
            }
            continue;
        }
        double t = -fp / fd;
        if (fd > 0) {
            t0 = std::max(t0, t);
        } else {
            t1 = std::min(t1, t);
        }
        if (t0 > t1 + 1e-12) {
            return false;
        }
    }
    return true;
}

std::vector<Polygon> planar_cells(const PolyhedralComplex& complex) {
    if (complex.dimension != 2) {
        throw InputError("planar complex expected");
    }
    std::vector<Polygon> out;
    for (const auto& c : complex.cells) {
        out.push_back(c.vertices);
    }
    return out;
}

Grid polytope_grid(const LatticePolytope& n, int resolution) {
    if (n.dimension != 2 || n.affine_dimension != 2) {
        throw InputError("complement analysis needs a two-dimensional Newton polygon");
    }
    Window w{kInf, -kInf, kInf, -kInf};
    for (const auto& v : n.vertices) {
        w.x0 = std::min(w.x0, static_cast<double>(v[0]));
        w.x1 = std::max(w.x1, static_cast<double>(v[0]));
        w.y0 = std::min(w.y0, static_cast<double>(v[1]));
        w.y1 = std::max(w.y1, static_cast<double>(v[1]));
    }
    return Grid(w, resolution, resolution);
}

std::vector<std::uint8_t> polytope_domain(const Grid& g, const LatticePolytope& n) {
    std::vector<std::uint8_t> domain(g.size(), 0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            double c[2] = {g.center_x(i), g.center_y(j)};
            domain[g.index(i, j)] = n.contains(std::span<const double>(c, 2), 1e-12) ? 1 : 0;
        }
    }
    return domain;
}

/// Labels components and attaches lattice points; `on` decides membership of a
/// lattice point in the blocking set, `clear` whether a straight move from a
/// lattice point to a cell center avoids it.
template <class On, class Clear>
ComplementReport analyse(const Grid& g, const std::vector<std::uint8_t>& blocked, const std::vector<std::uint8_t>& domain,
                         const std::vector<LatticePoint>& lattice, On&& on, Clear&& clear) {
    ComplementReport report;
    report.grid = g;
    auto labeling = label_components(g, blocked, &domain, 8);

    // thickness: chamfer distance to the nearest cell that is blocked or outside N
    const double w = g.cell_width();
    const double h = g.cell_height();
    const double diag = std::hypot(w, h);
    std::vector<double> depth(g.size(), kInf);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (labeling.label[k] < 0) {
            depth[k] = 0.0;
        }
    }
    auto relax = [&](int i, int j, int a, int b, double c) {
        double from = (a < 0 || b < 0 || a >= g.nx || b >= g.ny) ? 0.0 : depth[g.index(a, b)];
        double& t = depth[g.index(i, j)];
        t = std::min(t, from + c);
    };
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            relax(i, j, i - 1, j, w);
            relax(i, j, i, j - 1, h);
            relax(i, j, i - 1, j - 1, diag);
            relax(i, j, i + 1, j - 1, diag);
        }
    }
    for (int j = g.ny - 1; j >= 0; --j) {
        for (int i = g.nx - 1; i >= 0; --i) {
            relax(i, j, i + 1, j, w);
            relax(i, j, i, j + 1, h);
            relax(i, j, i + 1, j + 1, diag);
            relax(i, j, i - 1, j + 1, diag);
        }
    }
    const double thin = 2.0 * std::min(w, h);
    std::vector<int> remap(labeling.components.size(), -1);
    for (std::size_t c = 0; c < labeling.components.size(); ++c) {
        const auto& comp = labeling.components[c];
        std::size_t best = comp.cells.front();
        for (auto k : comp.cells) {
            if (depth[k] > depth[best]) {
                best = k;
            }
        }
        if (depth[best] < thin) {
            ++report.slivers;
            continue;
        }
        remap[c] = static_cast<int>(report.components.size());
        ComplementRegion region;
        region.cells = comp.cells.size();
        int i = static_cast<int>(best % static_cast<std::size_t>(g.nx));
        int j = static_cast<int>(best / static_cast<std::size_t>(g.nx));
        region.representative = {g.center_x(i), g.center_y(j)};
        report.components.push_back(std::move(region));
    }
    for (auto& l : labeling.label) {
        if (l >= 0) {
            l = remap[static_cast<std::size_t>(l)];
        }
    }
    for (const auto& p : lattice) {
        RealPoint rp = to_real(p);
        if (on(rp)) {
            report.on_complex.push_back(p);
            continue;
        }
        auto cell = g.cell(rp[0], rp[1]);
        int found = -1;
        if (cell) {
            const int reach = 6;
            std::vector<std::pair<double, std::size_t>> cand;
            for (int dj = -reach; dj <= reach; ++dj) {
                for (int di = -reach; di <= reach; ++di) {
                    int a = cell->first + di;
                    int b = cell->second + dj;
                    if (a < 0 || b < 0 || a >= g.nx || b >= g.ny) {
                        continue;
                    }
                    auto q = g.index(a, b);
                    if (labeling.label[q] < 0) {
                        continue;
                    }
                    double dx = g.center_x(a) - rp[0];
                    double dy = g.center_y(b) - rp[1];
                    cand.emplace_back(dx * dx + dy * dy, q);
                }
            }
            std::sort(cand.begin(), cand.end());
            for (const auto& [d, q] : cand) {
                int a = static_cast<int>(q % static_cast<std::size_t>(g.nx));
                int b = static_cast<int>(q / static_cast<std::size_t>(g.nx));
                if (clear(rp, RealPoint{g.center_x(a), g.center_y(b)})) {
                    found = labeling.label[q];
                    break;
                }
            }
        }
        if (found < 0) {
            report.unassigned.push_back(p);
        } else {
            report.components[static_cast<std::size_t>(found)].lattice_points.push_back(p);
        }
    }
    for (auto& region : report.components) {
        std::sort(region.lattice_points.begin(), region.lattice_points.end());
        if (region.lattice_points.size() == 1) {
            region.order = region.lattice_points.front();
        }
    }
    return report;
}

} // namespace

HypothesisReport check_hypotheses(const LaurentPolynomial& f) {
    HypothesisReport r;
    r.vertex_bound = vertex_coefficient_bound(f);
    auto conc = is_concave_on_support(f);
    r.concave = conc.concave;
    r.concavity_witness = conc.witness;
    r.sparse = conc.sparse;
    if (f.size() == 1) {
        r.triangulation = true;
    } else if (affine_dimension(f.support()) == f.dimension() && f.dimension() <= 3) {
        r.triangulation = is_triangulation(coefficient_subdivision(f));
    }
    return r;
}

RegularSubdivision coefficient_subdivision(const LaurentPolynomial& f, std::optional<std::uint64_t> jitter_seed) {
    std::vector<double> heights;
    for (const auto& t : f.terms()) {
        heights.push_back(std::log(std::abs(t.coefficient)));
    }
    if (jitter_seed) {
        heights = jitter_heights(heights, *jitter_seed);
    }
    return regular_subdivision(f.support(), heights);
}

PolyhedralComplex direct_complex(const LaurentPolynomial& f, std::optional<std::uint64_t> jitter_seed) {
    if (f.dimension() > 3) {
        throw InputError("the direct complex is constructed for n <= 3");
    }
    if (f.dimension() < 2) {
        throw InputError("the direct complex is constructed for n = 2 or 3");
    }
    auto sub = coefficient_subdivision(f, jitter_seed);
    for (const auto& cell : sub.cells) {
        if (!cell.is_simplex()) {
            std::string desc;
            for (const auto& v : cell.vertices) {
                desc += " (" + std::to_string(v[0]);
                for (std::size_t k = 1; k < v.size(); ++k) {
                    desc += "," + std::to_string(v[k]);
                }
                desc += ")";
            }
            throw RefusalError("coefficient subdivision is not a triangulation: cell" + desc +
                               " is not a simplex; use the limit method");
        }
    }
    PolyhedralComplex out;
    out.dimension = f.dimension();
    for (const auto& cell : sub.cells) {
        ComplexCell cc;
        cc.dual_simplex = cell.vertices;
        std::sort(cc.dual_simplex.begin(), cc.dual_simplex.end());
        if (out.dimension == 2) {
            auto ring = cell.vertices;
            if (doubled_signed_area({ring[0], ring[1], ring[2]}) < 0) {
                std::swap(ring[1], ring[2]);
            }
            for (std::size_t i = 0; i < 3; ++i) {
                const auto& a = ring[i];
                const auto& b = ring[(i + 1) % 3];
                cc.vertices.push_back({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
            }
        } else {
            cc.vertices = edge_midpoints(cell);
            std::sort(cc.vertices.begin(), cc.vertices.end());
        }
        out.cells.push_back(std::move(cc));
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> cell_edges(const ComplexCell& cell) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const auto m = cell.vertices.size();
    if (m == 0) {
        return out;
    }
    const auto dim = cell.vertices.front().size();
    if (dim == 2) {
        for (std::size_t i = 0; i < m; ++i) {
            auto a = i;
            auto b = (i + 1) % m;
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    // doubled coordinates of midpoints are integral, so the hull is exact
    std::vector<LatticePoint> doubled;
    for (const auto& v : cell.vertices) {
        LatticePoint p;
        for (double x : v) {
            double d = 2.0 * x;
            if (d != std::round(d)) {
                throw InputError("cell vertices are not half-integral");
            }
            p.push_back(static_cast<int>(d));
        }
        doubled.push_back(p);
    }
    auto hull = convex_hull(doubled);
    auto on = [](const HalfSpace& h, const LatticePoint& p) {
        long long s = 0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            s += h.normal[k] * p[k];
        }
        return s == h.offset;
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            int shared = 0;
            for (const auto& h : hull.facets) {
                if (on(h, doubled[i]) && on(h, doubled[j])) {
                    ++shared;
                }
            }
            if (shared >= 2) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

std::vector<std::string> adjacency_violations(const PolyhedralComplex& complex) {
    std::vector<std::string> out;
    auto polys = planar_cells(complex);
    for (std::size_t a = 0; a < polys.size(); ++a) {
        for (std::size_t b = a + 1; b < polys.size(); ++b) {
            // points of P in Q or of Q in P other than shared vertices, or crossing edges
            std::set<RealPoint> shared;
            for (const auto& v : polys[a]) {
                if (std::find(polys[b].begin(), polys[b].end(), v) != polys[b].end()) {
                    shared.insert(v);
                }
            }
            bool bad = false;
            for (int pass = 0; pass < 2 && !bad; ++pass) {
                const auto& p = pass == 0 ? polys[a] : polys[b];
                const auto& q = pass == 0 ? polys[b] : polys[a];
                for (std::size_t i = 0; i < p.size() && !bad; ++i) {
                    const auto& s0 = p[i];
                    const auto& s1 = p[(i + 1) % p.size()];
                    // shrink the edge slightly at shared endpoints
                    RealPoint t0 = s0;
                    RealPoint t1 = s1;
                    const double e = 1e-9;
                    if (shared.count(s0)) {
                        t0 = {s0[0] + e * (s1[0] - s0[0]), s0[1] + e * (s1[1] - s0[1])};
                    }
                    if (shared.count(s1)) {
                        t1 = {s1[0] + e * (s0[0] - s1[0]), s1[1] + e * (s0[1] - s1[1])};
                    }
                    if (segment_meets_polygon(t0, t1, q)) {
                        bad = true;
                    }
                }
            }
            if (bad) {
                out.push_back("cells " + std::to_string(a) + " and " + std::to_string(b) +
                              " meet outside their shared midpoints");
            }
        }
    }
    return out;
}

bool complex_contains(const PolyhedralComplex& complex, std::span<const double> p, double tol) {
    for (const auto& poly : planar_cells(complex)) {
        if (polygon_contains(poly, p, tol)) {
            return true;
        }
    }
    return false;
}

PointCloud dense_sample(const PolyhedralComplex& complex, double spacing) {
    if (!(spacing > 0)) {
        throw InputError("spacing must be positive");
    }
    PointCloud out{Ambient::PolytopeSpace, 2, {}};
    for (const auto& poly : planar_cells(complex)) {
        // fan triangulation from the first vertex
        for (std::size_t t = 1; t + 1 < poly.size(); ++t) {
            const auto& a = poly[0];
            const auto& b = poly[t];
            const auto& c = poly[t + 1];
            double longest = std::max({std::hypot(b[0] - a[0], b[1] - a[1]), std::hypot(c[0] - b[0], c[1] - b[1]),
                                       std::hypot(a[0] - c[0], a[1] - c[1])});
            int k = std::max(1, static_cast<int>(std::ceil(longest / spacing)));
            for (int i = 0; i <= k; ++i) {
                for (int j = 0; i + j <= k; ++j) {
                    double s = static_cast<double>(i) / k;
                    double r = static_cast<double>(j) / k;
                    double p[2] = {a[0] + s * (b[0] - a[0]) + r * (c[0] - a[0]),
                                   a[1] + s * (b[1] - a[1]) + r * (c[1] - a[1])};
                    out.push(p);
                }
            }
        }
    }
    out.sort_lexicographic();
    return out;
}

std::vector<double> default_schedule() {
    return {1, 2, 4, 8, 16, 32, 64, 128, 256};
}

LimitEstimate limit_complex_estimate(const LaurentPolynomial& f, const std::vector<double>& schedule,
                                     std::optional<double> eps, const MomentSampling& sampling) {
    if (schedule.empty()) {
        throw InputError("empty r schedule");
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] >= 1.0) || (i > 0 && !(schedule[i] > schedule[i - 1]))) {
            throw InputError("r schedule must be increasing with values >= 1");
        }
    }
    LimitEstimate out;
    out.schedule = schedule;
    out.eps = eps ? *eps : 0.02 * newton_polytope(f).diameter();
    if (!(out.eps > 0)) {
        throw InputError("eps must be positive");
    }
    out.experimental = !check_hypotheses(f).eligible();
    PointCloud previous;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        PointCloud cloud = wca(f, schedule[i], sampling);
        if (i > 0) {
            double d = hausdorff_distance(previous, cloud);
            out.distances.push_back(d);
            if (!out.converged_at && d < out.eps) {
                out.converged_at = i - 1;
            }
        }
        previous = std::move(cloud);
    }
    out.converged = out.converged_at.has_value();
    out.cloud = std::move(previous);
    return out;
}

std::size_t ComplementReport::flagged() const {
    return static_cast<std::size_t>(
        std::count_if(components.begin(), components.end(), [](const auto& c) { return !c.order.has_value(); }));
}

ComplementReport complement_analysis(const PolyhedralComplex& complex, const LaurentPolynomial& f, int resolution) {
    auto n = newton_polytope(f);
    Grid g = polytope_grid(n, resolution);
    auto domain = polytope_domain(g, n);
    auto polys = planar_cells(complex);
    std::vector<std::uint8_t> blocked(g.size(), 0);
    for (const auto& poly : polys) {
        double px0 = kInf;
        double px1 = -kInf;
        double py0 = kInf;
        double py1 = -kInf;
        for (const auto& v : poly) {
            px0 = std::min(px0, v[0]);
            px1 = std::max(px1, v[0]);
            py0 = std::min(py0, v[1]);
            py1 = std::max(py1, v[1]);
        }
        int i0 = std::max(0, static_cast<int>(std::floor((px0 - g.window.x0) / g.cell_width())) - 1);
        int i1 = std::min(g.nx - 1, static_cast<int>(std::floor((px1 - g.window.x0) / g.cell_width())) + 1);
        int j0 = std::max(0, static_cast<int>(std::floor((py0 - g.window.y0) / g.cell_height())) - 1);
        int j1 = std::min(g.ny - 1, static_cast<int>(std::floor((py1 - g.window.y0) / g.cell_height())) + 1);
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                double x0 = g.window.x0 + i * g.cell_width();
                double y0 = g.window.y0 + j * g.cell_height();
                if (rect_meets_polygon(x0, x0 + g.cell_width(), y0, y0 + g.cell_height(), poly)) {
                    blocked[g.index(i, j)] = 1;
                }
            }
        }
    }
    auto on = [&](const RealPoint& p) { return complex_contains(complex, p); };
    auto clear = [&](const RealPoint& p, const RealPoint& q) {
        return std::none_of(polys.begin(), polys.end(), [&](const Polygon& poly) { return segment_meets_polygon(p, q, poly); });
    };
    return analyse(g, blocked, domain, lattice_points(n), on, clear);
}

ComplementReport complement_analysis(const PointCloud& cloud, const LaurentPolynomial& f, int resolution, int dilation) {
    if (cloud.dimension != 2) {
        throw InputError("complement analysis of a cloud needs planar points");
    }
    if (cloud.empty()) {
        throw InputError("complement analysis of an empty cloud");
    }
    auto n = newton_polytope(f);
    Grid g = polytope_grid(n, resolution);
    auto domain = polytope_domain(g, n);
    std::vector<std::uint8_t> seed(g.size(), 0);
    for (std::size_t k = 0; k < cloud.size(); ++k) {
        auto p = cloud.point(k);
        if (auto c = g.cell(p[0], p[1])) {
            seed[g.index(c->first, c->second)] = 1;
        }
    }
    std::vector<std::uint8_t> blocked = seed;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!seed[g.index(i, j)]) {
                continue;
            }
            for (int dj = -dilation; dj <= dilation; ++dj) {
                for (int di = -dilation; di <= dilation; ++di) {
                    int a = i + di;
                    int b = j + dj;
                    if (a >= 0 && b >= 0 && a < g.nx && b < g.ny) {
                        blocked[g.index(a, b)] = 1;
                    }
                }
            }
        }
    }
    KdTree tree(cloud);
    double reach = (dilation + 0.5) * g.cell_diagonal();
    auto on = [&](const RealPoint& p) { return tree.nearest_distance(p) <= reach; };
    auto clear = [&](const RealPoint& p, const RealPoint& q) {
        double len = std::hypot(q[0] - p[0], q[1] - p[1]);
        int steps = std::max(1, static_cast<int>(std::ceil(4.0 * len / std::min(g.cell_width(), g.cell_height()))));
        for (int s = 0; s <= steps; ++s) {
            double t = static_cast<double>(s) / steps;
            auto c = g.cell(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]));
            if (c && blocked[g.index(c->first, c->second)]) {
                return false;
            }
        }
        return true;
    };
    return analyse(g, blocked, domain, lattice_points(n), on, clear);
}

Pi0Report pi0_compare(const LaurentPolynomial& f, const Pi0Options& options) {
    Pi0Report out;
    auto cls = classify(f, options.classify);
    out.affine_orders = cls.realized;
    out.affine_count = cls.realized.size();
    for (const auto& note : cls.notes) {
        out.notes.push_back("affine: " + note);
    }
    ComplementReport rep;
    try {
        auto cx = direct_complex(f);
        out.method = "direct";
        rep = complement_analysis(cx, f, options.complex_resolution);
    } catch (const RefusalError& e) {
        out.method = "limit";
        out.notes.push_back(std::string("direct complex refused: ") + e.what());
        auto est = limit_complex_estimate(f, options.schedule, std::nullopt, options.sampling);
        if (!est.converged) {
            out.notes.push_back("limit estimate did not converge within the schedule");
        }
        rep = complement_analysis(est.cloud, f, options.cloud_resolution, options.cloud_dilation);
    }
    out.polytope_count = rep.components.size();
    for (const auto& c : rep.components) {
        if (c.order) {
            out.polytope_orders.push_back(*c.order);
        } else {
            out.notes.push_back("polytope component with " + std::to_string(c.lattice_points.size()) +
                                " lattice points");
        }
    }
    std::sort(out.polytope_orders.begin(), out.polytope_orders.end());
    out.match = out.affine_count == out.polytope_count && out.affine_orders == out.polytope_orders;
    if (cls.verdict == Verdict::Indeterminate) {
        out.verdict = "indeterminate";
    } else {
        out.verdict = out.match ? "match" : "mismatch";
    }
    return out;
}

} // namespace atlas
