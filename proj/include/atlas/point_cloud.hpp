#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

namespace atlas {

enum class Ambient { LogSpace, PolytopeSpace };

inline std::string_view ambient_name(Ambient a) {
    return a == Ambient::LogSpace ? "log" : "polytope";
}

/// Points in R^dimension stored row-major.
struct PointCloud {
    Ambient ambient = Ambient::PolytopeSpace;
    int dimension = 2;
    std::vector<double> coords;

    std::size_t size() const { return dimension > 0 ? coords.size() / static_cast<std::size_t>(dimension) : 0; }
    bool empty() const { return coords.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dimension), static_cast<std::size_t>(dimension)};
    }

    void push(std::span<const double> p) { coords.insert(coords.end(), p.begin(), p.end()); }

    void append(const PointCloud& other) { coords.insert(coords.end(), other.coords.begin(), other.coords.end()); }

    /// Lexicographic order; makes serialization and comparisons deterministic.
    void sort_lexicographic() {
        const auto d = static_cast<std::size_t>(dimension);
        std::vector<std::size_t> order(size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(coords.begin() + static_cast<std::ptrdiff_t>(a * d),
                                                coords.begin() + static_cast<std::ptrdiff_t>((a + 1) * d),
                                                coords.begin() + static_cast<std::ptrdiff_t>(b * d),
                                                coords.begin() + static_cast<std::ptrdiff_t>((b + 1) * d));
        });
        std::vector<double> sorted;
        sorted.reserve(coords.size());
        for (auto i : order) {
            sorted.insert(sorted.end(), coords.begin() + static_cast<std::ptrdiff_t>(i * d),
                          coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
        }
        coords = std::move(sorted);
    }

    bool operator==(const PointCloud&) const = default;
};

} // namespace atlas
