#include "atlas/error.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/poly.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace atlas;

namespace {

long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return static_cast<long long>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<long long>(a[1] - o[1]) * (b[0] - o[0]);
}

bool in_triangle(const LatticePoint& p, const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    long long d1 = cross(a, b, p);
    long long d2 = cross(b, c, p);
    long long d3 = cross(c, a, p);
    bool neg = d1 < 0 || d2 < 0 || d3 < 0;
    bool pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(neg && pos);
}

bool on_segment(const LatticePoint& p, const LatticePoint& a, const LatticePoint& b) {
    return cross(a, b, p) == 0 && std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= p[1] && p[1] <= std::max(a[1], b[1]);
}

// A point is extreme iff it lies in no triangle or segment spanned by the other points.
std::set<LatticePoint> brute_extreme(const std::vector<LatticePoint>& pts) {
    std::set<LatticePoint> distinct(pts.begin(), pts.end());
    std::vector<LatticePoint> u(distinct.begin(), distinct.end());
    std::set<LatticePoint> out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        bool covered = false;
        for (std::size_t a = 0; a < u.size() && !covered; ++a) {
            for (std::size_t b = a + 1; b < u.size() && !covered; ++b) {
                if (a == i || b == i) {
                    continue;
                }
                if (on_segment(u[i], u[a], u[b])) {
                    covered = true;
                }
                for (std::size_t c = b + 1; c < u.size() && !covered; ++c) {
                    if (c != i && cross(u[a], u[b], u[c]) != 0 && in_triangle(u[i], u[a], u[b], u[c])) {
                        covered = true;
                    }
                }
            }
        }
        if (!covered) {
            out.insert(u[i]);
        }
    }
    return out;
}

long long gcd_len(const LatticePoint& a, const LatticePoint& b) {
    return std::gcd(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

} // namespace

TEST_CASE("hull examples") {
    auto h = convex_hull_2d({{0, 0}, {2, 0}, {0, 2}, {1, 1}});
    CHECK(std::set<LatticePoint>(h.vertices.begin(), h.vertices.end()) ==
          std::set<LatticePoint>{{0, 0}, {2, 0}, {0, 2}});
    auto five = convex_hull_2d({{1, 0}, {1, 1}, {2, 1}, {3, 1}, {0, 2}});
    CHECK(std::set<LatticePoint>(five.vertices.begin(), five.vertices.end()) ==
          std::set<LatticePoint>{{1, 0}, {3, 1}, {0, 2}});
    auto seg = convex_hull({{0, 0}, {1, 1}, {2, 2}});
    CHECK(seg.affine_dimension == 1);
    CHECK(std::set<LatticePoint>(seg.vertices.begin(), seg.vertices.end()) == std::set<LatticePoint>{{0, 0}, {2, 2}});
}

TEST_CASE("hull vertices agree with the brute-force extreme point oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coord(-4, 4);
    std::uniform_int_distribution<int> count(3, 11);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<LatticePoint> pts;
        int n = count(rng);
        for (int k = 0; k < n; ++k) {
            pts.push_back({coord(rng), coord(rng)});
        }
        if (affine_dimension(pts) < 2) {
            continue;
        }
        auto hull = convex_hull_2d(pts);
        CHECK(std::set<LatticePoint>(hull.vertices.begin(), hull.vertices.end()) == brute_extreme(pts));
        // counterclockwise ring
        CHECK(doubled_signed_area(hull.vertices) > 0);
        for (const auto& p : pts) {
            CHECK(hull.contains(p));
        }
    }
}

TEST_CASE("lattice point counts satisfy Pick's theorem") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<LatticePoint> pts;
        for (int k = 0; k < 6; ++k) {
            pts.push_back({coord(rng), coord(rng)});
        }
        if (affine_dimension(pts) < 2) {
            continue;
        }
        auto hull = convex_hull_2d(pts);
        long long boundary = 0;
        for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
            boundary += gcd_len(hull.vertices[i], hull.vertices[(i + 1) % hull.vertices.size()]);
        }
        long long twice_area = hull.doubled_area();
        long long interior = (twice_area - boundary + 2) / 2;
        CHECK(static_cast<long long>(lattice_points(hull).size()) == interior + boundary);
    }
    auto five = convex_hull_2d({{1, 0}, {3, 1}, {0, 2}});
    CHECK(lattice_points(five) == std::vector<LatticePoint>{{0, 2}, {1, 0}, {1, 1}, {2, 1}, {3, 1}});
    CHECK(lattice_points(convex_hull_2d({{0, 0}, {1, 0}, {0, 1}})).size() == 3);
}

TEST_CASE("three-dimensional hulls") {
    auto simplex = convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(simplex.vertices.size() == 4);
    CHECK(simplex.facets.size() == 4);
    CHECK(lattice_points(simplex).size() == 4);
    std::vector<LatticePoint> cube;
    for (int a = 0; a <= 2; ++a) {
        for (int b = 0; b <= 2; ++b) {
            for (int c = 0; c <= 2; ++c) {
                cube.push_back({a, b, c});
            }
        }
    }
    auto h = convex_hull(cube);
    CHECK(h.vertices.size() == 8);
    CHECK(lattice_points(h).size() == 27);
    double mid[3] = {1.0, 1.0, 1.0};
    CHECK(h.contains(std::span<const double>(mid, 3)));
    double out[3] = {2.5, 1.0, 1.0};
    CHECK_FALSE(h.contains(std::span<const double>(out, 3)));
}

TEST_CASE("regular subdivisions") {
    std::vector<LatticePoint> pts = {{1, 0}, {0, 1}, {2, 2}, {1, 1}};
    auto up = regular_subdivision(pts, {0, 0, 0, std::log(2.0)});
    CHECK(up.cells.size() == 3);
    for (const auto& c : up.cells) {
        CHECK(c.is_simplex());
        CHECK(std::find(c.vertices.begin(), c.vertices.end(), LatticePoint{1, 1}) != c.vertices.end());
    }
    CHECK(is_triangulation(up));

    auto down = regular_subdivision(pts, {0, 0, 0, -std::log(2.0)});
    REQUIRE(down.cells.size() == 1);
    CHECK(std::set<LatticePoint>(down.cells[0].vertices.begin(), down.cells[0].vertices.end()) ==
          std::set<LatticePoint>{{1, 0}, {0, 1}, {2, 2}});
    CHECK(std::find(down.used_vertices.begin(), down.used_vertices.end(), LatticePoint{1, 1}) ==
          down.used_vertices.end());

    auto tri = regular_subdivision({{0, 0}, {1, 0}, {0, 1}}, {0, 0, 0});
    CHECK(tri.cells.size() == 1);
    CHECK(is_triangulation(tri));

    auto square = regular_subdivision({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 0, 0});
    CHECK(square.cells.size() == 1);
    CHECK_FALSE(is_triangulation(square));
    auto jittered = regular_subdivision(square.points, jitter_heights(square.heights, 7));
    CHECK(is_triangulation(jittered));
    CHECK(jittered.cells.size() == 2);
}

TEST_CASE("subdivision cells tile the polytope") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    for (const auto& text : fixtures::kSix) {
        auto f = parse_polynomial(text);
        std::vector<double> h;
        for (const auto& t : f.terms()) {
            h.push_back(std::log(std::abs(t.coefficient)) + 1e-3 * g(rng));
        }
        auto s = regular_subdivision(f.support(), h);
        long long total = 0;
        for (const auto& c : s.cells) {
            total += c.shape.doubled_area();
        }
        CHECK(total == newton_polytope(f).doubled_area());
    }
}

TEST_CASE("subdivision in space") {
    auto s = regular_subdivision({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {0, 0, 0, 0});
    CHECK(s.cells.size() == 1);
    CHECK(s.cells[0].is_simplex());
    CHECK_THROWS_AS(regular_subdivision({{0, 0}, {1, 1}, {2, 2}}, {0, 0, 0}), InputError);
}

TEST_CASE("concavity on the support") {
    CHECK(is_concave_on_support(parse_polynomial(fixtures::kHole)).concave);
    auto r = is_concave_on_support(parse_polynomial(fixtures::kNoHole));
    CHECK_FALSE(r.concave);
    REQUIRE(r.witness);
    CHECK(*r.witness == LatticePoint{1, 1});
    CHECK(is_concave_on_support(parse_polynomial("3*x*y")).concave);
    CHECK(is_concave_on_support(parse_polynomial(fixtures::kLacking)).sparse);
}

TEST_CASE("vertex coefficient bound") {
    CHECK(vertex_coefficient_bound(parse_polynomial("1+x+y")));
    CHECK_FALSE(vertex_coefficient_bound(parse_polynomial("0.5+x+y")));
    CHECK(vertex_coefficient_bound(parse_polynomial(fixtures::kFive)));
}

TEST_CASE("edge midpoints") {
    auto m = edge_midpoints(Cell::from_vertices({{0, 0}, {1, 0}, {0, 1}}));
    std::set<RealPoint> got(m.begin(), m.end());
    CHECK(got == std::set<RealPoint>{{0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}});
    CHECK(edge_midpoints(Cell::from_vertices({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).size() == 6);
    auto t = edge_midpoints(Cell::from_vertices({{1, 0}, {0, 1}, {2, 2}}));
    std::set<RealPoint> tt(t.begin(), t.end());
    CHECK(tt == std::set<RealPoint>{{0.5, 0.5}, {1.5, 1.0}, {1.0, 1.5}});
    CHECK_THROWS_AS(edge_midpoints(Cell::from_vertices({{0, 0}, {1, 0}, {0, 1}, {1, 1}})), InputError);
}
