#include "atlas/error.hpp"
#include "atlas/io.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/moment.hpp"
#include "atlas/numerics.hpp"
#include "atlas/poly.hpp"
#include "atlas/raster.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

using namespace atlas;

namespace {

int flood_count(const PointCloud& cloud, const LaurentPolynomial& f, int resolution) {
    auto n = newton_polytope(f);
    Window w{1e300, -1e300, 1e300, -1e300};
    for (const auto& v : n.vertices) {
        w.x0 = std::min<double>(w.x0, v[0]);
        w.x1 = std::max<double>(w.x1, v[0]);
        w.y0 = std::min<double>(w.y0, v[1]);
        w.y1 = std::max<double>(w.y1, v[1]);
    }
    Grid g(w, resolution, resolution);
    std::vector<std::uint8_t> blocked(g.size(), 0), domain(g.size(), 0);
    for (std::size_t k = 0; k < cloud.size(); ++k) {
        auto c = g.cell(cloud.point(k)[0], cloud.point(k)[1]);
        if (c) {
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    int i = c->first + di;
                    int j = c->second + dj;
                    if (i >= 0 && j >= 0 && i < g.nx && j < g.ny) {
                        blocked[g.index(i, j)] = 1;
                    }
                }
            }
        }
    }
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            double p[2] = {g.center_x(i), g.center_y(j)};
            domain[g.index(i, j)] = n.contains(std::span<const double>(p, 2), 0.0) ? 1 : 0;
        }
    }
    return static_cast<int>(label_components(g, blocked, &domain).components.size());
}

} // namespace

TEST_CASE("moment map values") {
    std::vector<LatticePoint> one = {{2, 3}};
    Complex x[2] = {0.3, Complex(1, 4)};
    CHECK(moment_map(one, x) == RealPoint{2.0, 3.0});
    std::vector<LatticePoint> line = {{0, 0}, {1, 0}, {0, 1}};
    Complex u1[2] = {1.0, 1.0};
    auto m = moment_map(line, u1);
    CHECK(m[0] == doctest::Approx(1.0 / 3));
    CHECK(m[1] == doctest::Approx(1.0 / 3));
    double zero[2] = {0, 0};
    auto half = moment_map_log({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, zero);
    CHECK(half[0] == doctest::Approx(0.5));
    double big[1] = {1000};
    auto edge = moment_map_log({{0}, {1}}, big);
    CHECK(std::isfinite(edge[0]));
    CHECK(1.0 - edge[0] < 1e-300);
    double square[2] = {1000, 0};
    auto sq = moment_map_log({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, square);
    CHECK(sq[0] == doctest::Approx(1.0));
    CHECK(sq[1] == doctest::Approx(0.5));
}

TEST_CASE("weighted moment map") {
    auto f = parse_polynomial("1+x+2*y");
    Complex x[2] = {1.0, 1.0};
    auto w = weighted_moment_map(f, x);
    CHECK(w[0] == doctest::Approx(0.25));
    CHECK(w[1] == doctest::Approx(0.5));

    // unit moduli: agrees with the plain moment map
    auto g = parse_polynomial("1+(0,1)*x+(-1,0)*y+(0.6,0.8)*x*y");
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    for (int k = 0; k < 20; ++k) {
        Complex p[2] = {Complex(n(rng), n(rng)), Complex(n(rng), n(rng))};
        auto a = weighted_moment_map(g, p);
        auto b = moment_map(g.support(), p);
        CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
        CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-14));
        double u[2] = {std::log(std::abs(p[0])), std::log(std::abs(p[1]))};
        auto c = weighted_moment_map_log(to_log_form(g), u);
        CHECK(c[0] == doctest::Approx(a[0]).epsilon(1e-12));
    }
}

TEST_CASE("compactified amoebas lie in the Newton polytope") {
    MomentSampling s;
    s.slices = 80;
    s.thetas = 48;
    for (const auto& text : {fixtures::kLine, fixtures::kFive, fixtures::kHole}) {
        auto f = parse_polynomial(text);
        auto n = newton_polytope(f);
        auto cloud = compactified_amoeba(f, s);
        CHECK(cloud.ambient == Ambient::PolytopeSpace);
        CHECK(cloud.size() > 100);
        for (std::size_t k = 0; k < cloud.size(); ++k) {
            CHECK(n.contains(cloud.point(k), 1e-9));
        }
        auto again = compactified_amoeba(f, s);
        CHECK(again == cloud);
    }
}

TEST_CASE("compactified line has three complement regions") {
    auto f = parse_polynomial(fixtures::kLine);
    auto cloud = compactified_amoeba(f);
    CHECK(flood_count(cloud, f, 150) == 3);
}

TEST_CASE("wca at r = 1 with unit coefficients is the compactified amoeba") {
    MomentSampling s;
    s.slices = 60;
    s.thetas = 32;
    auto f = parse_polynomial("1+x+y");
    CHECK(hausdorff_distance(wca(f, 1.0, s), compactified_amoeba(f, s)) < 1e-12);
    CHECK_THROWS_AS(wca(f, 0.5, s), InputError);
    CHECK_THROWS_AS(wca(f, -2.0, s), InputError);
}

TEST_CASE("wca golden clouds for r = 1, 2, 3") {
    auto f = parse_polynomial(fixtures::kEleven);
    MomentSampling s;
    s.slices = 60;
    s.thetas = 32;
    for (int r : {1, 2, 3}) {
        auto cloud = wca(f, r, s);
        std::string path = std::string(ATLAS_GOLDEN_DIR) + "/wca_r" + std::to_string(r) + ".json";
        std::ifstream in(path);
        REQUIRE_MESSAGE(in.good(), "missing golden " << path);
        auto golden = cloud_from_json(Json::parse(in).at("cloud"));
        CHECK(hausdorff_distance(cloud, golden) < 1e-9);
    }
}
