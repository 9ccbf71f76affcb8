#include "atlas/lattice_geom.hpp"

#include "atlas/error.hpp"
#include "atlas/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace atlas {

namespace {

using Vec = std::vector<long long>;

Vec sub(const LatticePoint& a, const LatticePoint& b) {
    Vec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        d[i] = static_cast<long long>(a[i]) - b[i];
    }
    return d;
}

long long dot(const Vec& a, const LatticePoint& p) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * p[i];
    }
    return s;
}

Vec cross(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

Vec primitive(Vec v) {
    long long g = 0;
    for (long long x : v) {
        g = std::gcd(g, x < 0 ? -x : x);
    }
    if (g > 1) {
        for (auto& x : v) {
            x /= g;
        }
    }
    return v;
}

long long orient2d(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    return (static_cast<long long>(b[0]) - a[0]) * (static_cast<long long>(c[1]) - a[1]) -
           (static_cast<long long>(b[1]) - a[1]) * (static_cast<long long>(c[0]) - a[0]);
}

/// Rank of integer row vectors via fraction-free elimination.
int rank_of(std::vector<Vec> rows) {
    if (rows.empty()) {
        return 0;
    }
    const std::size_t cols = rows[0].size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < rows.size() && rows[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[static_cast<std::size_t>(rank)]);
        const Vec& p = rows[static_cast<std::size_t>(rank)];
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
            long long f = rows[r][c];
            if (f == 0) {
                continue;
            }
            for (std::size_t k = 0; k < cols; ++k) {
                rows[r][k] = rows[r][k] * p[c] - p[k] * f;
            }
            rows[r] = primitive(rows[r]);
        }
        ++rank;
    }
    return rank;
}

std::vector<LatticePoint> unique_sorted(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Andrew's monotone chain on distinct sorted points; strict (drops collinear points).
std::vector<LatticePoint> hull_ring_2d(const std::vector<LatticePoint>& pts) {
    if (pts.size() < 3) {
        return pts;
    }
    std::vector<LatticePoint> ring(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && orient2d(ring[k - 2], ring[k - 1], p) <= 0) {
            --k;
        }
        ring[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient2d(ring[k - 2], ring[k - 1], pts[i]) <= 0) {
            --k;
        }
        ring[k++] = pts[i];
    }
    ring.resize(k - 1);
    return ring;
}

HalfSpace make_halfspace(Vec normal, const LatticePoint& through) {
    normal = primitive(std::move(normal));
    long long off = dot(normal, through);
    return {std::move(normal), off};
}

/// Inequality through edge p->q of a polygon, oriented so `inside` satisfies it.
HalfSpace edge_facet(Vec normal, const LatticePoint& p, const std::vector<LatticePoint>& others) {
    for (const auto& v : others) {
        long long s = dot(normal, v) - dot(normal, p);
        if (s > 0) {
            for (auto& x : normal) {
                x = -x;
            }
            break;
        }
        if (s < 0) {
            break;
        }
    }
    return make_halfspace(std::move(normal), p);
}

/// Two integer vectors orthogonal to d and independent (n = 3).
std::vector<Vec> orthogonal_pair(const Vec& d) {
    std::vector<Vec> out;
    for (int i = 0; i < 3 && out.size() < 2; ++i) {
        Vec e(3, 0);
        e[static_cast<std::size_t>(i)] = 1;
        Vec c = primitive(cross(d, e));
        if (is_zero(c)) {
            continue;
        }
        auto candidate = out;
        candidate.push_back(c);
        if (rank_of(candidate) == static_cast<int>(candidate.size())) {
            out.push_back(c);
        }
    }
    return out;
}

void polygon_in_plane(LatticePolytope& poly, const std::vector<LatticePoint>& pts, const Vec& plane_normal) {
    // project along the coordinate where the plane normal is largest
    std::size_t drop = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (std::llabs(plane_normal[i]) > std::llabs(plane_normal[drop])) {
            drop = i;
        }
    }
    std::map<LatticePoint, LatticePoint> back;
    std::vector<LatticePoint> projected;
    for (const auto& p : pts) {
        LatticePoint q;
        for (std::size_t i = 0; i < 3; ++i) {
            if (i != drop) {
                q.push_back(p[i]);
            }
        }
        back[q] = p;
        projected.push_back(q);
    }
    auto ring = hull_ring_2d(unique_sorted(projected));
    poly.vertices.clear();
    for (const auto& q : ring) {
        poly.vertices.push_back(back[q]);
    }
    const auto& vs = poly.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto& p = vs[i];
        const auto& q = vs[(i + 1) % vs.size()];
        poly.facets.push_back(edge_facet(cross(sub(q, p), plane_normal), p, vs));
    }
}

void segment_bounds(LatticePolytope& poly, const LatticePoint& a, const LatticePoint& b) {
    Vec d = primitive(sub(b, a));
    Vec neg(d.size());
    std::transform(d.begin(), d.end(), neg.begin(), [](long long x) { return -x; });
    poly.facets.push_back(make_halfspace(d, b));
    poly.facets.push_back(make_halfspace(neg, a));
}

void point_equalities(LatticePolytope& poly, const LatticePoint& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        Vec e(p.size(), 0);
        e[i] = 1;
        poly.equalities.push_back(make_halfspace(e, p));
    }
}

void hull_1d(LatticePolytope& poly, const std::vector<LatticePoint>& pts) {
    const auto& lo = pts.front();
    const auto& hi = pts.back();
    poly.affine_dimension = lo == hi ? 0 : 1;
    poly.vertices = lo == hi ? std::vector<LatticePoint>{lo} : std::vector<LatticePoint>{lo, hi};
    if (lo == hi) {
        point_equalities(poly, lo);
    } else {
        segment_bounds(poly, lo, hi);
    }
}

void hull_2d(LatticePolytope& poly, const std::vector<LatticePoint>& pts) {
    auto ring = hull_ring_2d(pts);
    poly.vertices = ring;
    if (ring.size() == 1) {
        poly.affine_dimension = 0;
        point_equalities(poly, ring[0]);
        return;
    }
    if (ring.size() == 2) {
        poly.affine_dimension = 1;
        Vec d = sub(ring[1], ring[0]);
        poly.equalities.push_back(make_halfspace({-d[1], d[0]}, ring[0]));
        segment_bounds(poly, ring[0], ring[1]);
        return;
    }
    poly.affine_dimension = 2;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& p = ring[i];
        const auto& q = ring[(i + 1) % ring.size()];
        Vec e = sub(q, p);
        poly.facets.push_back(make_halfspace({e[1], -e[0]}, p));
    }
}

void hull_3d(LatticePolytope& poly, const std::vector<LatticePoint>& pts) {
    const int k = affine_dimension(pts);
    poly.affine_dimension = k;
    if (k == 0) {
        poly.vertices = {pts[0]};
        point_equalities(poly, pts[0]);
        return;
    }
    if (k == 1) {
        // pts sorted lexicographically; extremes along a line are first and last
        poly.vertices = {pts.front(), pts.back()};
        Vec d = primitive(sub(pts.back(), pts.front()));
        for (auto& n : orthogonal_pair(d)) {
            poly.equalities.push_back(make_halfspace(n, pts.front()));
        }
        segment_bounds(poly, pts.front(), pts.back());
        return;
    }
    if (k == 2) {
        Vec normal;
        for (std::size_t i = 1; i < pts.size() && normal.empty(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                Vec c = cross(sub(pts[i], pts[0]), sub(pts[j], pts[0]));
                if (!is_zero(c)) {
                    normal = primitive(c);
                    break;
                }
            }
        }
        poly.equalities.push_back(make_halfspace(normal, pts[0]));
        polygon_in_plane(poly, pts, normal);
        return;
    }
    std::set<std::pair<Vec, long long>> seen;
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t l = j + 1; l < m; ++l) {
                Vec nrm = cross(sub(pts[j], pts[i]), sub(pts[l], pts[i]));
                if (is_zero(nrm)) {
                    continue;
                }
                bool pos = false;
                bool neg = false;
                long long base = dot(nrm, pts[i]);
                for (const auto& p : pts) {
                    long long s = dot(nrm, p) - base;
                    pos |= s > 0;
                    neg |= s < 0;
                }
                if (pos && neg) {
                    continue;
                }
                if (pos) {
                    for (auto& x : nrm) {
                        x = -x;
                    }
                }
                HalfSpace h = make_halfspace(nrm, pts[i]);
                if (seen.insert({h.normal, h.offset}).second) {
                    poly.facets.push_back(std::move(h));
                }
            }
        }
    }
    for (const auto& p : pts) {
        std::vector<Vec> tight;
        for (const auto& f : poly.facets) {
            if (dot(f.normal, p) == f.offset) {
                tight.push_back(f.normal);
            }
        }
        if (rank_of(tight) == 3) {
            poly.vertices.push_back(p);
        }
    }
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t m) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] < m - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

double plane_value(const std::vector<double>& plane, const LatticePoint& p) {
    double v = plane[0];
    for (std::size_t i = 0; i < p.size(); ++i) {
        v += plane[i + 1] * p[i];
    }
    return v;
}

/// Solves h = a + <b, alpha> through n+1 affinely independent lifted points.
std::vector<double> fit_plane(const std::vector<const LatticePoint*>& pts, const std::vector<double>& hs) {
    const std::size_t n = pts[0]->size();
    // Gaussian elimination on [alpha_i - alpha_0 | h_i - h_0]
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a[r][c] = static_cast<double>((*pts[r + 1])[c] - (*pts[0])[c]);
        }
        a[r][n] = hs[r + 1] - hs[0];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                piv = r;
            }
        }
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) {
                continue;
            }
            double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    std::vector<double> plane(n + 1);
    double base = hs[0];
    for (std::size_t c = 0; c < n; ++c) {
        plane[c + 1] = a[c][n] / a[c][c];
        base -= plane[c + 1] * (*pts[0])[c];
    }
    plane[0] = base;
    return plane;
}

/// Upper-hull facets of lifted points by enumerating affinely independent (n+1)-subsets.
std::vector<Cell> upper_facets(const std::vector<LatticePoint>& pts, const std::vector<double>& hs) {
    const std::size_t n = pts[0].size();
    const std::size_t m = pts.size();
    std::set<std::vector<std::size_t>> seen;
    std::vector<Cell> cells;
    std::vector<std::size_t> idx(n + 1);

    auto consider = [&]() {
        std::vector<Vec> diffs;
        for (std::size_t k = 1; k <= n; ++k) {
            diffs.push_back(sub(pts[idx[k]], pts[idx[0]]));
        }
        if (rank_of(diffs) != static_cast<int>(n)) {
            return;
        }
        std::vector<const LatticePoint*> sel;
        std::vector<double> sh;
        for (auto i : idx) {
            sel.push_back(&pts[i]);
            sh.push_back(hs[i]);
        }
        auto plane = fit_plane(sel, sh);
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < m; ++i) {
            double d = hs[i] - plane_value(plane, pts[i]);
            if (d > kHeightTolerance) {
                return;
            }
            if (d >= -kHeightTolerance) {
                on.push_back(i);
            }
        }
        if (!seen.insert(on).second) {
            return;
        }
        Cell cell;
        for (auto i : on) {
            cell.points.push_back(pts[i]);
        }
        cell.shape = convex_hull(cell.points);
        cell.vertices = cell.shape.vertices;
        cell.affine_dimension = cell.shape.affine_dimension;
        cell.plane = std::move(plane);
        cells.push_back(std::move(cell));
    };

    if (m < n + 1) {
        return cells;
    }
    std::vector<std::size_t> comb(n + 1);
    std::iota(comb.begin(), comb.end(), 0);
    do {
        idx = comb;
        consider();
    } while (next_combination(comb, m));
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.vertices < b.vertices; });
    return cells;
}

/// Concavity on lifted points living in R^k with full affine span.
ConcavityReport concavity_full(const std::vector<LatticePoint>& pts, const std::vector<double>& hs) {
    ConcavityReport report;
    const std::size_t k = pts[0].size();
    if (k == 1) {
        // upper hull of (t, h) in the plane
        std::vector<std::size_t> order(pts.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pts[a][0] < pts[b][0]; });
        std::vector<std::size_t> hull;
        for (auto i : order) {
            while (hull.size() >= 2) {
                auto a = hull[hull.size() - 2];
                auto b = hull.back();
                double cr = (pts[b][0] - pts[a][0]) * (hs[i] - hs[a]) - (hs[b] - hs[a]) * (pts[i][0] - pts[a][0]);
                if (cr >= 0) {
                    hull.pop_back();
                } else {
                    break;
                }
            }
            hull.push_back(i);
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double t = pts[i][0];
            double envelope = hs[hull.front()];
            for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
                double t0 = pts[hull[s]][0];
                double t1 = pts[hull[s + 1]][0];
                if (t >= t0 && t <= t1) {
                    double w = (t - t0) / (t1 - t0);
                    envelope = hs[hull[s]] * (1 - w) + hs[hull[s + 1]] * w;
                    break;
                }
            }
            if (hs[i] < envelope - kHeightTolerance) {
                report.concave = false;
                report.witness = pts[i];
                return report;
            }
        }
        return report;
    }
    auto cells = upper_facets(pts, hs);
    std::set<LatticePoint> on;
    for (const auto& c : cells) {
        on.insert(c.points.begin(), c.points.end());
    }
    for (const auto& p : pts) {
        if (!on.count(p)) {
            report.concave = false;
            report.witness = p;
            return report;
        }
    }
    return report;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

int affine_dimension(const std::vector<LatticePoint>& points) {
    if (points.empty()) {
        return -1;
    }
    std::vector<Vec> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        diffs.push_back(sub(points[i], points[0]));
    }
    return rank_of(std::move(diffs));
}

long long doubled_signed_area(const std::vector<LatticePoint>& ring) {
    long long a = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& p = ring[i];
        const auto& q = ring[(i + 1) % ring.size()];
        a += static_cast<long long>(p[0]) * q[1] - static_cast<long long>(q[0]) * p[1];
    }
    return a;
}

bool LatticePolytope::contains(const LatticePoint& p) const {
    if (static_cast<int>(p.size()) != dimension) {
        return false;
    }
    for (const auto& e : equalities) {
        if (dot(e.normal, p) != e.offset) {
            return false;
        }
    }
    for (const auto& f : facets) {
        if (dot(f.normal, p) > f.offset) {
            return false;
        }
    }
    return true;
}

bool LatticePolytope::contains(std::span<const double> p, double tol) const {
    if (static_cast<int>(p.size()) != dimension) {
        return false;
    }
    auto eval = [&](const HalfSpace& h) {
        double s = 0.0;
        double norm = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            s += static_cast<double>(h.normal[i]) * p[i];
            norm += static_cast<double>(h.normal[i] * h.normal[i]);
        }
        return std::pair{(s - static_cast<double>(h.offset)), std::sqrt(norm)};
    };
    for (const auto& e : equalities) {
        auto [d, nrm] = eval(e);
        if (std::abs(d) > tol * nrm) {
            return false;
        }
    }
    for (const auto& f : facets) {
        auto [d, nrm] = eval(f);
        if (d > tol * nrm) {
            return false;
        }
    }
    return true;
}

long long LatticePolytope::doubled_area() const {
    if (dimension != 2 || affine_dimension != 2) {
        return 0;
    }
    return doubled_signed_area(vertices);
}

double LatticePolytope::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < vertices[i].size(); ++k) {
                double d = vertices[i][k] - vertices[j][k];
                s += d * d;
            }
            best = std::max(best, std::sqrt(s));
        }
    }
    return best;
}

LatticePolytope convex_hull(const std::vector<LatticePoint>& points) {
    if (points.empty()) {
        throw InputError("convex hull of an empty point set");
    }
    const std::size_t n = points[0].size();
    for (const auto& p : points) {
        if (p.size() != n) {
            throw InputError("points of mixed dimension");
        }
    }
    if (n < 1 || n > 3) {
        throw InputError("convex hulls are supported for dimensions 1 to 3");
    }
    LatticePolytope poly;
    poly.dimension = static_cast<int>(n);
    poly.generators = points;
    auto pts = unique_sorted(points);
    if (n == 1) {
        hull_1d(poly, pts);
    } else if (n == 2) {
        hull_2d(poly, pts);
    } else {
        hull_3d(poly, pts);
    }
    return poly;
}

LatticePolytope convex_hull_2d(const std::vector<LatticePoint>& points) {
    for (const auto& p : points) {
        if (p.size() != 2) {
            throw InputError("convex_hull_2d expects planar lattice points");
        }
    }
    return convex_hull(points);
}

std::vector<LatticePoint> lattice_points(const LatticePolytope& polytope) {
    const auto n = static_cast<std::size_t>(polytope.dimension);
    if (n < 1 || n > 3 || polytope.vertices.empty()) {
        throw InputError("lattice_points supports dimensions 1 to 3");
    }
    LatticePoint lo = polytope.vertices[0];
    LatticePoint hi = lo;
    for (const auto& v : polytope.vertices) {
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    std::vector<LatticePoint> out;
    LatticePoint p = lo;
    while (true) {
        if (polytope.contains(p)) {
            out.push_back(p);
        }
        std::size_t i = n;
        while (i-- > 0) {
            if (p[i] < hi[i]) {
                ++p[i];
                break;
            }
            p[i] = lo[i];
            if (i == 0) {
                return out;
            }
        }
    }
}

Cell Cell::from_vertices(const std::vector<LatticePoint>& vertices) {
    Cell c;
    c.shape = convex_hull(vertices);
    c.vertices = c.shape.vertices;
    c.points = c.vertices;
    c.affine_dimension = c.shape.affine_dimension;
    return c;
}

bool Cell::is_simplex() const {
    return static_cast<int>(vertices.size()) == affine_dimension + 1 && points.size() == vertices.size();
}

RegularSubdivision regular_subdivision(const std::vector<LatticePoint>& points, const std::vector<double>& heights) {
    if (points.size() != heights.size()) {
        throw InputError("points and heights differ in length");
    }
    if (points.empty()) {
        throw InputError("empty point configuration");
    }
    const std::size_t n = points[0].size();
    if (n != 2 && n != 3) {
        throw InputError("regular subdivisions are supported in dimensions 2 and 3");
    }
    if (unique_sorted(points).size() != points.size()) {
        throw InputError("duplicate points in configuration");
    }
    if (affine_dimension(points) != static_cast<int>(n)) {
        throw InputError("degenerate span: points do not affinely span the ambient space");
    }
    for (double h : heights) {
        if (!std::isfinite(h)) {
            throw InputError("heights must be finite");
        }
    }
    RegularSubdivision sub;
    sub.ambient = convex_hull(points);
    sub.points = points;
    sub.heights = heights;
    sub.cells = upper_facets(points, heights);
    std::set<LatticePoint> used;
    for (const auto& c : sub.cells) {
        used.insert(c.vertices.begin(), c.vertices.end());
    }
    sub.used_vertices.assign(used.begin(), used.end());
    return sub;
}

std::vector<double> jitter_heights(const std::vector<double>& heights, std::uint64_t seed, double magnitude) {
    std::vector<double> out = heights;
    std::uint64_t state = seed;
    for (auto& h : out) {
        double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
        h += magnitude * (2.0 * u - 1.0);
    }
    return out;
}

bool is_triangulation(const RegularSubdivision& subdivision) {
    return std::all_of(subdivision.cells.begin(), subdivision.cells.end(), [](const Cell& c) { return c.is_simplex(); });
}

ConcavityReport is_concave_on_support(const LaurentPolynomial& f) {
    auto support = f.support();
    std::vector<double> heights;
    for (const auto& t : f.terms()) {
        heights.push_back(std::log(std::abs(t.coefficient)));
    }
    ConcavityReport report;
    const int k = affine_dimension(support);
    if (f.dimension() <= 3) {
        auto n_poly = convex_hull(support);
        report.sparse = lattice_points(n_poly).size() != support.size();
    }
    if (k <= 0) {
        return report;
    }
    // express the support in k coordinates on which the projection is injective
    std::vector<std::size_t> coords;
    const std::size_t n = support[0].size();
    if (static_cast<std::size_t>(k) == n) {
        coords.resize(n);
        std::iota(coords.begin(), coords.end(), 0);
    } else {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        // try every k-subset of coordinates
        std::vector<bool> mask(n, false);
        std::fill(mask.begin(), mask.begin() + k, true);
        do {
            std::vector<std::size_t> pick;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask[i]) {
                    pick.push_back(i);
                }
            }
            std::vector<LatticePoint> proj;
            for (const auto& s : support) {
                LatticePoint q;
                for (auto i : pick) {
                    q.push_back(s[i]);
                }
                proj.push_back(q);
            }
            if (affine_dimension(proj) == k) {
                coords = pick;
                break;
            }
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    std::vector<LatticePoint> proj;
    for (const auto& s : support) {
        LatticePoint q;
        for (auto i : coords) {
            q.push_back(s[i]);
        }
        proj.push_back(q);
    }
    auto inner = concavity_full(proj, heights);
    report.concave = inner.concave;
    if (inner.witness) {
        auto it = std::find(proj.begin(), proj.end(), *inner.witness);
        report.witness = support[static_cast<std::size_t>(it - proj.begin())];
    }
    return report;
}

bool vertex_coefficient_bound(const LaurentPolynomial& f) {
    auto poly = newton_polytope(f);
    for (const auto& v : poly.vertices) {
        if (std::abs(f.coefficient(v)) < 1.0) {
            return false;
        }
    }
    return true;
}

std::vector<RealPoint> edge_midpoints(const Cell& simplex) {
    const auto& v = simplex.vertices;
    if (v.empty() || affine_dimension(v) + 1 != static_cast<int>(v.size())) {
        throw InputError("edge midpoints require a simplex");
    }
    std::vector<RealPoint> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            RealPoint m(v[i].size());
            for (std::size_t k = 0; k < m.size(); ++k) {
                m[k] = 0.5 * (v[i][k] + v[j][k]);
            }
            out.push_back(std::move(m));
        }
    }
    return out;
}

} // namespace atlas
