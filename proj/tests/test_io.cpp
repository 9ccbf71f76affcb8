#include "atlas/error.hpp"
#include "atlas/io.hpp"
#include "atlas/moment.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace atlas;

namespace {

// serialize, print, parse, rebuild, serialize again
template <class T, class To, class From>
T reparse(const T& value, To to, From from) {
    return from(Json::parse(dump(to(value))));
}

} // namespace

TEST_CASE("polynomial JSON") {
    auto f = parse_polynomial("(1.5,-2)*x^-1*y^3 + 0.1*y + 7");
    auto j = polynomial_to_json(f);
    CHECK(j["n"] == 2);
    CHECK(j["terms"].size() == 3);
    CHECK(reparse(f, polynomial_to_json, polynomial_from_json) == f);
    for (const auto& text : fixtures::kSix) {
        auto g = parse_polynomial(text);
        CHECK(reparse(g, polynomial_to_json, polynomial_from_json) == g);
    }
    auto h = polynomial_from_json(Json::parse(R"({"n":2,"terms":[{"exp":[1,0],"re":1.0},{"exp":[0,1],"re":2.0,"im":0.5}]})"));
    CHECK(h.coefficient({0, 1}) == Complex(2.0, 0.5));
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"terms":[]})")), InputError);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"n":2,"terms":[{"exp":[1],"re":1}]})")), InputError);
}

TEST_CASE("subdivision and curve JSON") {
    auto f = parse_polynomial(fixtures::kHole);
    auto s = coefficient_subdivision(f);
    auto cells = subdivision_cells_from_json(Json::parse(dump(subdivision_to_json(s))));
    REQUIRE(cells.size() == s.cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(cells[i] == s.cells[i].vertices);
    }
    auto c = curve_data(tropical_curve_2d(TropicalPolynomial::from(f)));
    CHECK(reparse(c, curve_to_json, curve_from_json) == c);
}

TEST_CASE("raster JSON uses run-length encoding") {
    auto f = parse_polynomial("1+x+y");
    RasterOptions o;
    o.resolution = 60;
    auto r = amoeba_points(f, Window{-4, 4, -4, 4}, o);
    auto j = raster_to_json(r);
    CHECK(j["runs"].size() < r.occupied_count());
    auto back = raster_from_json(Json::parse(dump(j)));
    CHECK(back.grid.window == r.grid.window);
    CHECK(back.grid.nx == 60);
    CHECK(back.occupancy == r.occupancy);
    CHECK(back.interval_fills == r.interval_fills);
    CHECK(dump(raster_to_json(back)) == dump(j));
}

TEST_CASE("cloud JSON") {
    MomentSampling s;
    s.slices = 30;
    s.thetas = 16;
    auto cloud = compactified_amoeba(parse_polynomial(fixtures::kFive), s);
    auto back = reparse(cloud, cloud_to_json, cloud_from_json);
    CHECK(back == cloud);
    auto j = Json::parse(R"({"ambient":"polytope","points":[[0.31,0.42],[1,2]]})");
    auto c = cloud_from_json(j);
    CHECK(c.size() == 2);
    CHECK(c.point(0)[1] == 0.42);
    CHECK_THROWS_AS(cloud_from_json(Json::parse(R"({"ambient":"moon","points":[]})")), InputError);
    CHECK_THROWS_AS(cloud_from_json(Json::parse(R"({"ambient":"log","points":[[1,2,3]]})")), InputError);
}

TEST_CASE("complex JSON") {
    auto c = direct_complex(parse_polynomial(fixtures::kFive));
    CHECK(reparse(c, complex_to_json, complex_from_json) == c);
    auto oct = direct_complex(parse_polynomial("1+x+y+z"));
    CHECK(reparse(oct, complex_to_json, complex_from_json) == oct);
    auto j = complex_to_json(direct_complex(parse_polynomial("1+x+y")));
    CHECK(j["cells"][0]["dual_simplex"].size() == 3);
}

TEST_CASE("convergence report JSON") {
    LimitEstimate e;
    e.schedule = {1, 2, 4};
    e.distances = {0.3, 0.01};
    e.eps = 0.02;
    e.converged = true;
    e.converged_at = 1;
    e.experimental = true;
    auto back = reparse(e, convergence_to_json, convergence_from_json);
    CHECK(back.schedule == e.schedule);
    CHECK(back.distances == e.distances);
    CHECK(back.eps == e.eps);
    CHECK(back.converged);
    CHECK(back.converged_at == e.converged_at);
    CHECK(back.experimental);
    LimitEstimate none;
    none.schedule = {1};
    none.eps = 0.1;
    CHECK_FALSE(reparse(none, convergence_to_json, convergence_from_json).converged_at);
}

TEST_CASE("classification JSON keeps infinities") {
    ClassifyOptions o;
    o.raster.resolution = 120;
    auto c = classify(parse_polynomial(fixtures::kLacking), o);
    auto j = classification_to_json(c);
    auto text = dump(j);
    auto back = classification_from_json(Json::parse(text));
    CHECK(dump(classification_to_json(back)) == text);
    CHECK(back.verdict == c.verdict);
    CHECK(back.missing == c.missing);
    CHECK(back.evidence.size() == c.evidence.size());
    bool saw_inf = false;
    for (const auto& e : back.evidence) {
        if (e.margin && std::isinf(e.margin->margin)) {
            saw_inf = true;
        }
    }
    CHECK(saw_inf);
}

TEST_CASE("hypothesis, complement and pi0 JSON") {
    auto h = check_hypotheses(parse_polynomial(fixtures::kNoHole));
    auto hb = reparse(h, hypotheses_to_json, hypotheses_from_json);
    CHECK(hb.concave == h.concave);
    CHECK(hb.concavity_witness == h.concavity_witness);
    CHECK(hb.vertex_bound == h.vertex_bound);
    CHECK(hb.triangulation == h.triangulation);
    CHECK(hb.sparse == h.sparse);

    auto f = parse_polynomial(fixtures::kHole);
    auto cj = complement_to_json(complement_analysis(direct_complex(f), f, 200));
    CHECK(cj["components"].size() == 4);

    Pi0Report p;
    p.method = "direct";
    p.verdict = "match";
    p.match = true;
    p.affine_count = 2;
    p.affine_orders = {{0, 0}, {1, 0}};
    p.polytope_count = 2;
    p.polytope_orders = {{0, 0}, {1, 0}};
    p.notes = {"n"};
    auto pb = reparse(p, pi0_to_json, pi0_from_json);
    CHECK(pb.method == p.method);
    CHECK(pb.affine_orders == p.affine_orders);
    CHECK(pb.polytope_orders == p.polytope_orders);
    CHECK(pb.notes == p.notes);
    CHECK(pb.match);
}
