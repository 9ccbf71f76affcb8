#include "atlas/render.hpp"

#include "atlas/error.hpp"
#include "atlas/lattice_geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

namespace atlas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") {
        s = "0.00";
    }
    return s;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct Box {
    double x0 = kInf;
    double x1 = -kInf;
    double y0 = kInf;
    double y1 = -kInf;

    void add(double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
            return;
        }
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    bool empty() const { return x0 > x1; }
};

std::optional<Ambient> ambient_of(const Layer& layer) {
    if (auto* c = std::get_if<CloudLayer>(&layer)) {
        return c->cloud.ambient;
    }
    if (std::holds_alternative<RasterLayer>(layer)) {
        return Ambient::LogSpace;
    }
    return Ambient::PolytopeSpace;
}

void require_planar(int dimension, const char* what) {
    if (dimension != 2) {
        throw InputError(std::string(what) + " must be planar to render");
    }
}

Box bounds(const std::vector<Layer>& layers) {
    Box b;
    for (const auto& layer : layers) {
        if (auto* c = std::get_if<CloudLayer>(&layer)) {
            require_planar(c->cloud.dimension, "point cloud");
            for (std::size_t i = 0; i < c->cloud.size(); ++i) {
                auto p = c->cloud.point(i);
                b.add(p[0], p[1]);
            }
        } else if (auto* k = std::get_if<ComplexLayer>(&layer)) {
            require_planar(k->complex.dimension, "complex");
            for (const auto& cell : k->complex.cells) {
                for (const auto& v : cell.vertices) {
                    b.add(v[0], v[1]);
                }
            }
        } else if (auto* l = std::get_if<LatticeLayer>(&layer)) {
            for (const auto& p : l->points) {
                require_planar(static_cast<int>(p.size()), "lattice point");
                b.add(p[0], p[1]);
            }
        } else if (auto* o = std::get_if<OutlineLayer>(&layer)) {
            for (const auto& v : o->ring) {
                require_planar(static_cast<int>(v.size()), "outline");
                b.add(v[0], v[1]);
            }
        } else if (auto* r = std::get_if<RasterLayer>(&layer)) {
            const auto& w = r->raster.grid.window;
            b.add(w.x0, w.y0);
            b.add(w.x1, w.y1);
        }
    }
    if (b.empty()) {
        return {0.0, 1.0, 0.0, 1.0};
    }
    double pad = 0.04 * std::max({b.x1 - b.x0, b.y1 - b.y0, 1e-9});
    return {b.x0 - pad, b.x1 + pad, b.y0 - pad, b.y1 + pad};
}

/// Uniform scale, centered, y up.
struct Viewport {
    double ox = 0.0;
    double oy = 0.0;
    double w = 0.0;
    double h = 0.0;
    Box box;
    double scale = 1.0;
    double cx = 0.0;
    double cy = 0.0;

    Viewport(double ox_, double oy_, double w_, double h_, double margin, Box b) : ox(ox_), oy(oy_), w(w_), h(h_), box(b) {
        double sx = (w - 2 * margin) / (b.x1 - b.x0);
        double sy = (h - 2 * margin) / (b.y1 - b.y0);
        scale = std::min(sx, sy);
        cx = 0.5 * (b.x0 + b.x1);
        cy = 0.5 * (b.y0 + b.y1);
    }
    double x(double v) const { return ox + 0.5 * w + (v - cx) * scale; }
    double y(double v) const { return oy + 0.5 * h - (v - cy) * scale; }
};

std::string ring_path(const std::vector<RealPoint>& ring, const Viewport& vp) {
    std::string d;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        d += (i == 0 ? "M" : "L") + fmt(vp.x(ring[i][0])) + "," + fmt(vp.y(ring[i][1]));
    }
    return d + "Z";
}

void draw(std::ostringstream& out, const std::vector<Layer>& layers, const Viewport& vp, const SvgStyle& style) {
    for (const auto& layer : layers) {
        if (auto* c = std::get_if<CloudLayer>(&layer)) {
            if (c->cloud.empty()) {
                continue;
            }
            std::string d;
            for (std::size_t i = 0; i < c->cloud.size(); ++i) {
                auto p = c->cloud.point(i);
                if (std::isfinite(p[0]) && std::isfinite(p[1])) {
                    d += "M" + fmt(vp.x(p[0])) + "," + fmt(vp.y(p[1])) + "h0";
                }
            }
            out << "<path class=\"cloud\" d=\"" << d << "\" fill=\"none\" stroke=\"" << escape(c->color)
                << "\" stroke-width=\"" << fmt(style.dot) << "\" stroke-linecap=\"round\"/>\n";
        } else if (auto* k = std::get_if<ComplexLayer>(&layer)) {
            if (k->complex.cells.empty()) {
                continue;
            }
            std::string d;
            for (const auto& cell : k->complex.cells) {
                d += ring_path(cell.vertices, vp);
            }
            out << "<path class=\"complex\" d=\"" << d << "\" fill=\"" << escape(k->fill)
                << "\" fill-opacity=\"0.8\" stroke=\"#222\" stroke-width=\"1\"/>\n";
        } else if (auto* o = std::get_if<OutlineLayer>(&layer)) {
            std::string pts;
            for (std::size_t i = 0; i < o->ring.size(); ++i) {
                pts += (i ? " " : "") + fmt(vp.x(o->ring[i][0])) + "," + fmt(vp.y(o->ring[i][1]));
            }
            out << "<polygon class=\"outline\" points=\"" << pts
                << "\" fill=\"none\" stroke=\"#000\" stroke-width=\"1.2\"/>\n";
        } else if (auto* l = std::get_if<LatticeLayer>(&layer)) {
            for (const auto& p : l->points) {
                out << "<circle cx=\"" << fmt(vp.x(p[0])) << "\" cy=\"" << fmt(vp.y(p[1]))
                    << "\" r=\"3.5\" fill=\"#000\"/>\n";
            }
            if (l->labels && !l->points.empty()) {
                out << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\">";
                for (const auto& p : l->points) {
                    out << "<text x=\"" << fmt(vp.x(p[0]) + 5) << "\" y=\"" << fmt(vp.y(p[1]) - 5) << "\">(" << p[0]
                        << "," << p[1] << ")</text>";
                }
                out << "</g>\n";
            }
        } else if (auto* r = std::get_if<RasterLayer>(&layer)) {
            const auto& g = r->raster.grid;
            std::string d;
            for (int j = 0; j < g.ny; ++j) {
                int i = 0;
                while (i < g.nx) {
                    if (!r->raster.occupancy[g.index(i, j)]) {
                        ++i;
                        continue;
                    }
                    int start = i;
                    while (i < g.nx && r->raster.occupancy[g.index(i, j)]) {
                        ++i;
                    }
                    double x0 = g.window.x0 + start * g.cell_width();
                    double x1 = g.window.x0 + i * g.cell_width();
                    double y0 = g.window.y0 + j * g.cell_height();
                    double y1 = y0 + g.cell_height();
                    d += "M" + fmt(vp.x(x0)) + "," + fmt(vp.y(y0)) + "H" + fmt(vp.x(x1)) + "V" + fmt(vp.y(y1)) + "H" +
                         fmt(vp.x(x0)) + "Z";
                }
            }
            if (!d.empty()) {
                out << "<path class=\"raster\" d=\"" << d << "\" fill=\"" << escape(r->fill) << "\"/>\n";
            }
        }
    }
}

void check_ambient(const std::vector<Layer>& layers) {
    std::optional<Ambient> seen;
    for (const auto& layer : layers) {
        auto a = ambient_of(layer);
        if (seen && a && *seen != *a) {
            throw InputError("layers mix log space and polytope space");
        }
        if (a) {
            seen = a;
        }
    }
}

} // namespace

std::string render_svg(const std::vector<Layer>& layers, const SvgStyle& style) {
    return render_panels({Panel{"", layers}}, style);
}

std::string render_panels(const std::vector<Panel>& panels, const SvgStyle& style) {
    const double title_band = std::any_of(panels.begin(), panels.end(), [](const Panel& p) { return !p.title.empty(); })
                                  ? 20.0
                                  : 0.0;
    const int count = std::max<int>(1, static_cast<int>(panels.size()));
    const int width = style.width * count;
    const int height = style.height + static_cast<int>(title_band);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect class=\"canvas\" x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#fff\"/>\n";
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const auto& panel = panels[k];
        check_ambient(panel.layers);
        double ox = static_cast<double>(k) * style.width;
        Viewport vp(ox, title_band, style.width, style.height, style.margin, bounds(panel.layers));
        out << "<g class=\"panel\">\n";
        if (!panel.title.empty()) {
            out << "<text x=\"" << fmt(ox + 0.5 * style.width)
                << "\" y=\"15\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
                << escape(panel.title) << "</text>\n";
        }
        draw(out, panel.layers, vp, style);
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

OutlineLayer newton_outline(const LaurentPolynomial& f) {
    if (f.dimension() != 2) {
        throw InputError("outline needs a planar polynomial");
    }
    auto n = newton_polytope(f);
    OutlineLayer o;
    for (const auto& v : n.vertices) {
        o.ring.push_back(to_real(v));
    }
    return o;
}

} // namespace atlas
