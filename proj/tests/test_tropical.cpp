#include "atlas/error.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/poly.hpp"
#include "atlas/tropical.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace atlas;

namespace {

TropicalPolynomial trop(const std::string& text) {
    return TropicalPolynomial::from(parse_polynomial(text));
}

std::set<LatticePoint> as_set(const std::vector<LatticePoint>& v) {
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("tropical evaluation") {
    double z0[2] = {0, 0};
    auto v = tropical_eval(trop("1+x+y"), z0);
    CHECK(v.value == doctest::Approx(0.0));
    CHECK(as_set(v.argmax) == std::set<LatticePoint>{{0, 0}, {1, 0}, {0, 1}});
    double z1[2] = {2, 0};
    auto w = tropical_eval(trop("1+x+y"), z1);
    CHECK(w.value == doctest::Approx(2.0));
    CHECK(w.argmax == std::vector<LatticePoint>{{1, 0}});
    auto e = tropical_eval(trop(fixtures::kFive), z0);
    CHECK(e.value == doctest::Approx(std::log(30.0)));
    CHECK(e.argmax == std::vector<LatticePoint>{{1, 1}});

    // brute-force maximum
    auto t = trop(fixtures::kEleven);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0, 3);
    for (int k = 0; k < 200; ++k) {
        double z[2] = {g(rng), g(rng)};
        double best = -1e300;
        for (std::size_t i = 0; i < t.exponents.size(); ++i) {
            best = std::max(best, t.heights[i] + t.exponents[i][0] * z[0] + t.exponents[i][1] * z[1]);
        }
        CHECK(tropical_eval(t, z).value == doctest::Approx(best));
    }
    auto r2 = TropicalPolynomial::from(parse_polynomial(fixtures::kFive), 2.0);
    auto idx = std::find(r2.exponents.begin(), r2.exponents.end(), LatticePoint{1, 1}) - r2.exponents.begin();
    CHECK(r2.heights[static_cast<std::size_t>(idx)] == doctest::Approx(2 * std::log(30.0)));
}

TEST_CASE("tropical line") {
    auto c = tropical_curve_2d(trop("1+x+y"));
    REQUIRE(c.vertices.size() == 1);
    CHECK(c.vertices[0][0] == doctest::Approx(0.0));
    CHECK(c.vertices[0][1] == doctest::Approx(0.0));
    CHECK(c.edges.empty());
    std::set<std::array<long long, 2>> dirs;
    for (const auto& r : c.rays) {
        dirs.insert(r.direction);
    }
    CHECK(dirs == std::set<std::array<long long, 2>>{{-1, 0}, {0, -1}, {1, 1}});
}

TEST_CASE("tropical curve with a cycle") {
    auto c = tropical_curve_2d(trop(fixtures::kHole));
    CHECK(c.vertices.size() == 3);
    CHECK(c.edges.size() == 3);
    CHECK(c.rays.size() == 3);
    std::vector<int> degree(3, 0);
    for (const auto& e : c.edges) {
        ++degree[e.from];
        ++degree[e.to];
    }
    CHECK(degree == std::vector<int>{2, 2, 2});
    CHECK(tropical_curve_2d(trop("3*x^2*y")).vertices.empty());
    CHECK_THROWS_AS(tropical_curve_2d(trop("1+x*y+x^2*y^2")), InputError);
}

TEST_CASE("balancing at every vertex") {
    for (const auto& text : fixtures::kSix) {
        auto c = tropical_curve_2d(trop(text));
        std::vector<std::array<long long, 2>> sum(c.vertices.size(), {0, 0});
        auto add = [&](std::size_t v, const std::array<LatticePoint, 2>& dual, double dx, double dy) {
            long long a = dual[1][0] - dual[0][0];
            long long b = dual[1][1] - dual[0][1];
            // (-b, a) has length = lattice length times the primitive normal
            long long nx = -b;
            long long ny = a;
            if (nx * dx + ny * dy < 0) {
                nx = -nx;
                ny = -ny;
            }
            sum[v][0] += nx;
            sum[v][1] += ny;
        };
        for (const auto& e : c.edges) {
            double dx = c.vertices[e.to][0] - c.vertices[e.from][0];
            double dy = c.vertices[e.to][1] - c.vertices[e.from][1];
            add(e.from, e.dual, dx, dy);
            add(e.to, e.dual, -dx, -dy);
        }
        for (const auto& r : c.rays) {
            auto len = lattice_length(r.dual[0], r.dual[1]);
            long long a = r.dual[1][0] - r.dual[0][0];
            long long b = r.dual[1][1] - r.dual[0][1];
            CHECK(r.direction[0] * a + r.direction[1] * b == 0);
            add(r.vertex, r.dual, static_cast<double>(r.direction[0] * len), static_cast<double>(r.direction[1] * len));
        }
        for (const auto& s : sum) {
            CHECK(s == std::array<long long, 2>{0, 0});
        }
        // every vertex is a corner where the whole dual cell ties
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            double z[2] = {c.vertices[i][0], c.vertices[i][1]};
            auto v = tropical_eval(trop(text), z);
            for (const auto& p : c.subdivision.cells[i].vertices) {
                CHECK(std::find(v.argmax.begin(), v.argmax.end(), p) != v.argmax.end());
            }
        }
    }
}

TEST_CASE("tropical orders") {
    CHECK(as_set(tropical_orders(trop(fixtures::kHole))) == std::set<LatticePoint>{{1, 0}, {0, 1}, {2, 2}, {1, 1}});
    CHECK(as_set(tropical_orders(trop(fixtures::kNoHole))) == std::set<LatticePoint>{{1, 0}, {0, 1}, {2, 2}});
    CHECK(as_set(tropical_orders(trop("1+x+y"))) == std::set<LatticePoint>{{0, 0}, {1, 0}, {0, 1}});
}

TEST_CASE("lattice length") {
    CHECK(lattice_length({0, 0}, {4, 6}) == 2);
    CHECK(lattice_length({1, 0}, {0, 1}) == 1);
    CHECK(lattice_length({0, 0}, {0, 3}) == 3);
}
