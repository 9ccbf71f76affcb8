#include "atlas/raster.hpp"

#include "atlas/error.hpp"

#include <algorithm>
#include <cmath>

namespace atlas {

Grid::Grid(Window w, int nx_, int ny_) : window(w), nx(nx_), ny(ny_) {
    if (nx <= 0 || ny <= 0) {
        throw InputError("grid resolution must be positive");
    }
    if (!window.well_ordered()) {
        throw InputError("window is not well ordered");
    }
}

double Grid::cell_diagonal() const {
    return std::hypot(cell_width(), cell_height());
}

std::optional<int> Grid::column(double x) const {
    if (!(x >= window.x0 && x <= window.x1)) {
        return std::nullopt;
    }
    int i = static_cast<int>(std::floor((x - window.x0) / cell_width()));
    return std::min(std::max(i, 0), nx - 1);
}

std::optional<int> Grid::row(double y) const {
    if (!(y >= window.y0 && y <= window.y1)) {
        return std::nullopt;
    }
    int j = static_cast<int>(std::floor((y - window.y0) / cell_height()));
    return std::min(std::max(j, 0), ny - 1);
}

std::optional<std::pair<int, int>> Grid::cell(double x, double y) const {
    auto i = column(x);
    auto j = row(y);
    if (!i || !j) {
        return std::nullopt;
    }
    return std::make_pair(*i, *j);
}

Labeling label_components(const Grid& grid, const std::vector<std::uint8_t>& blocked,
                          const std::vector<std::uint8_t>* domain, int connectivity) {
    if (connectivity != 4 && connectivity != 8) {
        throw InputError("connectivity must be 4 or 8");
    }
    if (blocked.size() != grid.size() || (domain && domain->size() != grid.size())) {
        throw InputError("raster mask does not match the grid");
    }
    auto inside = [&](std::size_t k) { return !domain || (*domain)[k] != 0; };
    Labeling out;
    out.label.assign(grid.size(), -1);
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < grid.size(); ++start) {
        if (blocked[start] || !inside(start) || out.label[start] >= 0) {
            continue;
        }
        int id = static_cast<int>(out.components.size());
        RasterComponent comp;
        out.label[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            std::size_t k = stack.back();
            stack.pop_back();
            comp.cells.push_back(k);
            int i = static_cast<int>(k % static_cast<std::size_t>(grid.nx));
            int j = static_cast<int>(k / static_cast<std::size_t>(grid.nx));
            if (i == 0 || j == 0 || i == grid.nx - 1 || j == grid.ny - 1) {
                comp.touches_boundary = true;
            }
            const int di[8] = {1, -1, 0, 0, 1, 1, -1, -1};
            const int dj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
            for (int d = 0; d < connectivity; ++d) {
                int a = i + di[d];
                int b = j + dj[d];
                if (a < 0 || b < 0 || a >= grid.nx || b >= grid.ny) {
                    continue;
                }
                std::size_t q = grid.index(a, b);
                if (!inside(q)) {
                    comp.touches_boundary = true;
                    continue;
                }
                if (blocked[q] || out.label[q] >= 0) {
                    continue;
                }
                out.label[q] = id;
                stack.push_back(q);
            }
        }
        std::sort(comp.cells.begin(), comp.cells.end());
        out.components.push_back(std::move(comp));
    }
    return out;
}

} // namespace atlas
