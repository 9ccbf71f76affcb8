#include "atlas/error.hpp"
#include "atlas/raster.hpp"

#include <doctest.h>

using namespace atlas;

TEST_CASE("grid geometry") {
    Grid g(Window{-1, 1, 0, 4}, 4, 8);
    CHECK(g.cell_width() == 0.5);
    CHECK(g.cell_height() == 0.5);
    CHECK(g.size() == 32);
    CHECK(g.index(3, 1) == 7);
    CHECK(g.center_x(0) == -0.75);
    CHECK(g.center_y(7) == 3.75);
    CHECK(g.cell(1.0, 4.0) == std::pair<int, int>{3, 7});
    CHECK_FALSE(g.cell(1.1, 0.0).has_value());
    CHECK_THROWS_AS(Grid(Window{1, 0, 0, 1}, 4, 4), InputError);
    CHECK_THROWS_AS(Grid(Window{0, 1, 0, 1}, 0, 4), InputError);
}

TEST_CASE("components, 4- and 8-connected") {
    // diagonal wall of blocked cells in a 4 x 4 grid
    Grid g(Window{0, 4, 0, 4}, 4, 4);
    std::vector<std::uint8_t> blocked(g.size(), 0);
    for (int k = 0; k < 4; ++k) {
        blocked[g.index(k, k)] = 1;
    }
    auto four = label_components(g, blocked);
    CHECK(four.components.size() == 2);
    auto eight = label_components(g, blocked, nullptr, 8);
    CHECK(eight.components.size() == 1);
    CHECK(four.label[g.index(0, 0)] == -1);
    for (const auto& c : four.components) {
        CHECK(c.cells.size() == 6);
        CHECK(c.touches_boundary);
    }
    CHECK_THROWS_AS(label_components(g, blocked, nullptr, 6), InputError);
}

TEST_CASE("enclosed component and domain mask") {
    Grid g(Window{0, 5, 0, 5}, 5, 5);
    std::vector<std::uint8_t> blocked(g.size(), 0);
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            blocked[g.index(i, j)] = (i == 2 && j == 2) ? 0 : 1;
        }
    }
    auto l = label_components(g, blocked);
    REQUIRE(l.components.size() == 2);
    int inner = l.label[g.index(2, 2)];
    CHECK_FALSE(l.components[static_cast<std::size_t>(inner)].touches_boundary);
    CHECK(l.components[static_cast<std::size_t>(inner)].cells.size() == 1);

    std::vector<std::uint8_t> domain(g.size(), 1);
    domain[g.index(0, 0)] = 0;
    auto m = label_components(g, blocked, &domain);
    CHECK(m.label[g.index(0, 0)] == -1);
    CHECK(m.components.size() == 2);
}
