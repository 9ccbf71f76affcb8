#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace atlas {

/// Axis-aligned box [x0, x1] x [y0, y1].
struct Window {
    double x0 = 0.0;
    double x1 = 0.0;
    double y0 = 0.0;
    double y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    bool well_ordered() const { return x0 < x1 && y0 < y1; }
    bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
    Window padded(double pad) const { return {x0 - pad, x1 + pad, y0 - pad, y1 + pad}; }

    bool operator==(const Window&) const = default;
};

/// Regular nx-by-ny grid over a window; cell (i, j) is column i, row j and has
/// linear index j * nx + i.
struct Grid {
    Window window;
    int nx = 0;
    int ny = 0;

    Grid() = default;
    Grid(Window w, int nx_, int ny_);

    double cell_width() const { return window.width() / nx; }
    double cell_height() const { return window.height() / ny; }
    double cell_diagonal() const;
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i); }

    double center_x(int i) const { return window.x0 + (i + 0.5) * cell_width(); }
    double center_y(int j) const { return window.y0 + (j + 0.5) * cell_height(); }

    /// Column containing x, clamped into [0, nx); nullopt outside the window.
    std::optional<int> column(double x) const;
    std::optional<int> row(double y) const;
    std::optional<std::pair<int, int>> cell(double x, double y) const;
};

struct RasterComponent {
    std::vector<std::size_t> cells;
    /// Some member cell lies on the outer ring of the grid or next to a cell
    /// outside the domain.
    bool touches_boundary = false;
};

struct Labeling {
    /// Component index per cell, -1 for blocked cells and cells outside the domain.
    std::vector<int> label;
    std::vector<RasterComponent> components;
};

/// Connected components of the free cells (blocked == 0), 4- or 8-connected. With a
/// domain mask only cells with domain != 0 take part. Components are numbered in
/// scan order.
Labeling label_components(const Grid& grid, const std::vector<std::uint8_t>& blocked,
                          const std::vector<std::uint8_t>* domain = nullptr, int connectivity = 4);

} // namespace atlas
