#include "atlas/error.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/moment.hpp"
#include "atlas/render.hpp"

#include <doctest.h>

#include <string>

using namespace atlas;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("empty canvas") {
    auto svg = render_svg({});
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "<rect") == 1);
    CHECK(count(svg, "<path") == 0);
}

TEST_CASE("medial triangle, outline and lattice dots") {
    auto f = parse_polynomial("1+x+y");
    std::vector<Layer> layers = {ComplexLayer{direct_complex(f)}, newton_outline(f),
                                 LatticeLayer{lattice_points(newton_polytope(f)), true}};
    auto svg = render_svg(layers);
    CHECK(count(svg, "<path") == 1);
    CHECK(count(svg, "<polygon") == 1);
    CHECK(count(svg, "<circle") == 3);
    CHECK(count(svg, "<text") == 3);
    CHECK(svg.find("(1,0)") != std::string::npos);
    CHECK(render_svg(layers) == svg);
}

TEST_CASE("cloud is a single path") {
    auto f = parse_polynomial("1+x+y");
    MomentSampling s;
    s.slices = 20;
    s.thetas = 16;
    auto svg = render_svg({CloudLayer{compactified_amoeba(f, s)}});
    CHECK(count(svg, "<path") == 1);
}

TEST_CASE("raster layer") {
    auto f = parse_polynomial("1+x+y");
    RasterOptions o;
    o.resolution = 40;
    auto svg = render_svg({RasterLayer{amoeba_points(f, Window{-3, 3, -3, 3}, o)}});
    CHECK(count(svg, "class=\"raster\"") == 1);
}

TEST_CASE("mixed ambient spaces are rejected") {
    auto f = parse_polynomial("1+x+y");
    RasterOptions o;
    o.resolution = 10;
    std::vector<Layer> mixed = {RasterLayer{amoeba_points(f, Window{-3, 3, -3, 3}, o)}, newton_outline(f)};
    CHECK_THROWS_AS(render_svg(mixed), InputError);
}

TEST_CASE("three panels side by side") {
    auto f = parse_polynomial("1+x+y");
    RasterOptions o;
    o.resolution = 30;
    MomentSampling s;
    s.slices = 20;
    s.thetas = 16;
    SvgStyle style;
    auto svg = render_panels({Panel{"affine amoeba", {RasterLayer{amoeba_points(f, Window{-3, 3, -3, 3}, o)}}},
                              Panel{"compactified amoeba", {CloudLayer{compactified_amoeba(f, s)}, newton_outline(f)}},
                              Panel{"polyhedral complex", {ComplexLayer{direct_complex(f)}, newton_outline(f)}}},
                             style);
    CHECK(count(svg, "<g class=\"panel\">") == 3);
    CHECK(svg.find("width=\"" + std::to_string(3 * style.width) + "\"") != std::string::npos);
    CHECK(svg.find("compactified amoeba") != std::string::npos);
}
