#include "atlas/amoeba.hpp"

#include "atlas/error.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/parallel.hpp"
#include "atlas/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

namespace atlas {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_planar(const LaurentPolynomial& f) {
    if (f.dimension() != 2) {
        throw InputError("amoeba sampling is implemented for n = 2 only");
    }
}

// ---------------------------------------------------------------------------
// Branch matching between consecutive angle samples
// ---------------------------------------------------------------------------

std::array<double, 3> sphere_point(const LogComplex& z) {
    double s = 1.0 / std::cosh(z.log_modulus);
    return {s * std::cos(z.phase), s * std::sin(z.phase), std::tanh(z.log_modulus)};
}

double chordal(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double dx = a[0] - b[0];
    double dy = a[1] - b[1];
    double dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

/// For each root of `a`, the index of its partner in `b` (-1 when unmatched).
std::vector<int> match_roots(const std::vector<LogComplex>& a, const std::vector<LogComplex>& b) {
    std::vector<int> out(a.size(), -1);
    if (a.empty() || b.empty()) {
        return out;
    }
    std::vector<std::array<double, 3>> pa;
    std::vector<std::array<double, 3>> pb;
    for (const auto& z : a) {
        pa.push_back(sphere_point(z));
    }
    for (const auto& z : b) {
        pb.push_back(sphere_point(z));
    }
    if (a.size() == b.size() && a.size() <= 5) {
        std::vector<int> perm(b.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best = perm;
        double best_cost = kInf;
        do {
            double cost = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                cost += chordal(pa[i], pb[static_cast<std::size_t>(perm[i])]);
            }
            if (cost < best_cost) {
                best_cost = cost;
                best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    // greedy on globally sorted pair distances
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            pairs.emplace_back(chordal(pa[i], pb[j]), i, j);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> used(b.size(), false);
    for (const auto& [d, i, j] : pairs) {
        if (out[i] < 0 && !used[j]) {
            out[i] = static_cast<int>(j);
            used[j] = true;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tracing the roots of one fiber family over a full circle of angles
// ---------------------------------------------------------------------------

struct TraceLimits {
    double lo = -kInf; ///< window range of the solved coordinate
    double hi = kInf;
    double jump = 0.25;
    int max_depth = 6;
};

/// Calls sample(theta, roots) for every evaluated angle and segment(va, vb,
/// unresolved) for each matched branch between consecutive angles. Unmatched
/// roots are reported as degenerate segments (va == vb).
template <class OnSample, class OnSegment>
void trace_slice(const FiberSolver& solver, double u, int thetas, const TraceLimits& lim, OnSample&& sample,
                 OnSegment&& segment) {
    auto clamp = [&](double v) { return std::clamp(v, lim.lo - lim.jump, lim.hi + lim.jump); };
    auto relevant = [&](double a, double b) {
        return !((a < lim.lo && b < lim.lo) || (a > lim.hi && b > lim.hi));
    };
    auto solve = [&](double theta) {
        auto rs = solver.solve(u, theta);
        sample(theta, rs.roots);
        return rs.roots;
    };

    auto refine = [&](auto&& self, double ta, const std::vector<LogComplex>& ra, double tb,
                      const std::vector<LogComplex>& rb, int depth) -> void {
        auto m = match_roots(ra, rb);
        bool split = false;
        for (std::size_t i = 0; i < ra.size() && !split; ++i) {
            if (m[i] < 0) {
                continue;
            }
            double va = ra[i].log_modulus;
            double vb = rb[static_cast<std::size_t>(m[i])].log_modulus;
            if (relevant(va, vb) && std::abs(clamp(va) - clamp(vb)) > lim.jump) {
                split = true;
            }
        }
        if (split && depth < lim.max_depth) {
            double tm = 0.5 * (ta + tb);
            auto rm = solve(tm);
            self(self, ta, ra, tm, rm, depth + 1);
            self(self, tm, rm, tb, rb, depth + 1);
            return;
        }
        std::vector<bool> hit(rb.size(), false);
        for (std::size_t i = 0; i < ra.size(); ++i) {
            double va = ra[i].log_modulus;
            if (m[i] < 0) {
                segment(va, va, false);
                continue;
            }
            hit[static_cast<std::size_t>(m[i])] = true;
            double vb = rb[static_cast<std::size_t>(m[i])].log_modulus;
            bool unresolved = relevant(va, vb) && std::abs(clamp(va) - clamp(vb)) > lim.jump;
            segment(va, vb, unresolved);
        }
        for (std::size_t j = 0; j < rb.size(); ++j) {
            if (!hit[j]) {
                segment(rb[j].log_modulus, rb[j].log_modulus, false);
            }
        }
    };

    std::vector<std::vector<LogComplex>> base(static_cast<std::size_t>(thetas));
    for (int k = 0; k < thetas; ++k) {
        base[static_cast<std::size_t>(k)] = solve(kTwoPi * k / thetas);
    }
    for (int k = 0; k < thetas; ++k) {
        double ta = kTwoPi * k / thetas;
        double tb = kTwoPi * (k + 1) / thetas;
        refine(refine, ta, base[static_cast<std::size_t>(k)], tb, base[static_cast<std::size_t>((k + 1) % thetas)], 0);
    }
}

std::vector<double> slice_positions(double lo, double hi, int slices, const std::vector<double>& focus, double radius,
                                    int focus_slices) {
    std::vector<double> out;
    for (int k = 0; k < slices; ++k) {
        out.push_back(lo + (k + 0.5) * (hi - lo) / slices);
    }
    for (double c : focus) {
        for (int k = 0; k < focus_slices; ++k) {
            double t = focus_slices == 1 ? 0.0 : -1.0 + 2.0 * k / (focus_slices - 1);
            double v = c + radius * std::sinh(4.0 * t) / std::sinh(4.0);
            if (v >= lo && v <= hi) {
                out.push_back(v);
            }
        }
    }
    return out;
}

/// Curve vertices of the tropical curve of f; empty for collinear supports.
std::vector<std::array<double, 2>> tropical_vertices(const LaurentPolynomial& f) {
    if (f.size() < 2 || affine_dimension(f.support()) < 2) {
        return {};
    }
    return tropical_curve_2d(TropicalPolynomial::from(f)).vertices;
}

} // namespace

// ---------------------------------------------------------------------------
// FiberSolver
// ---------------------------------------------------------------------------

FiberSolver::FiberSolver(const LogPolynomial& f, int variable) : variable_(variable) {
    if (f.dimension != 2 || (variable != 0 && variable != 1)) {
        throw InputError("fiber solving needs a planar polynomial");
    }
    if (f.terms.empty()) {
        throw InputError("empty polynomial");
    }
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (const auto& t : f.terms) {
        lo = std::min(lo, t.exponent[static_cast<std::size_t>(variable)]);
        hi = std::max(hi, t.exponent[static_cast<std::size_t>(variable)]);
    }
    if (hi == lo) {
        throw InputError(std::string("polynomial does not depend on ") + (variable == 0 ? "x" : "y") +
                         "; every fiber is degenerate");
    }
    min_degree_ = lo;
    degree_ = hi - lo;
    groups_.resize(static_cast<std::size_t>(degree_ + 1));
    const auto other = static_cast<std::size_t>(1 - variable);
    for (const auto& t : f.terms) {
        groups_[static_cast<std::size_t>(t.exponent[static_cast<std::size_t>(variable)] - lo)].push_back(
            {t.exponent[other], t.log_modulus, t.phase});
    }
}

LogRootSet FiberSolver::solve(double u, double theta) const {
    std::vector<LogComplex> coeffs(groups_.size());
    std::vector<LogComplex> parts;
    for (std::size_t j = 0; j < groups_.size(); ++j) {
        parts.clear();
        for (const auto& p : groups_[j]) {
            parts.push_back({p.log_modulus + p.other_exponent * u, p.phase + p.other_exponent * theta});
        }
        coeffs[j] = parts.empty() ? LogComplex{-kInf, 0.0} : log_sum(parts);
    }
    return roots_log_space(coeffs);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

std::vector<TorusPoint> sample_hypersurface(const LogPolynomial& f, const SamplingPlan& plan) {
    if (plan.slices <= 0 || plan.thetas <= 0) {
        throw InputError("slices and thetas must be positive");
    }
    if (!plan.window.well_ordered()) {
        throw InputError("window is not well ordered");
    }
    FiberSolver solve_y(f, 1);
    FiberSolver solve_x(f, 0);
    const Window& w = plan.window;
    std::vector<double> fx;
    std::vector<double> fy;
    for (const auto& c : plan.focus) {
        fx.push_back(c[0]);
        fy.push_back(c[1]);
    }
    auto xs = slice_positions(w.x0, w.x1, plan.slices, fx, plan.focus_radius, plan.focus_slices);
    auto ys = slice_positions(w.y0, w.y1, plan.slices, fy, plan.focus_radius, plan.focus_slices);

    std::vector<std::vector<TorusPoint>> slots(xs.size() + ys.size());
    parallel_for(slots.size(), [&](std::size_t s) {
        bool column = s < xs.size();
        const FiberSolver& solver = column ? solve_y : solve_x;
        double u = column ? xs[s] : ys[s - xs.size()];
        TraceLimits lim;
        lim.lo = column ? w.y0 : w.x0;
        lim.hi = column ? w.y1 : w.x1;
        lim.jump = plan.max_jump;
        lim.max_depth = plan.max_depth;
        auto& out = slots[s];
        trace_slice(
            solver, u, plan.thetas, lim,
            [&](double theta, const std::vector<LogComplex>& roots) {
                for (const auto& r : roots) {
                    if (r.log_modulus < lim.lo || r.log_modulus > lim.hi) {
                        continue;
                    }
                    TorusPoint p;
                    if (column) {
                        p.log_modulus = {u, r.log_modulus};
                        p.phase = {theta, r.phase};
                    } else {
                        p.log_modulus = {r.log_modulus, u};
                        p.phase = {r.phase, theta};
                    }
                    out.push_back(p);
                }
            },
            [](double, double, bool) {});
    });
    std::vector<TorusPoint> all;
    for (auto& s : slots) {
        all.insert(all.end(), s.begin(), s.end());
    }
    return all;
}

std::vector<TorusPoint> sample_hypersurface(const LaurentPolynomial& f, const SamplingPlan& plan) {
    require_planar(f);
    return sample_hypersurface(to_log_form(f), plan);
}

PointCloud log_image(const std::vector<TorusPoint>& points) {
    PointCloud cloud{Ambient::LogSpace, 2, {}};
    cloud.coords.reserve(points.size() * 2);
    for (const auto& p : points) {
        cloud.coords.push_back(p.log_modulus[0]);
        cloud.coords.push_back(p.log_modulus[1]);
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Raster
// ---------------------------------------------------------------------------

std::size_t AmoebaRaster::occupied_count() const {
    return static_cast<std::size_t>(std::count(occupancy.begin(), occupancy.end(), std::uint8_t{1}));
}

AmoebaRaster amoeba_points(const LaurentPolynomial& f, const Window& window, const RasterOptions& options) {
    require_planar(f);
    if (options.resolution <= 0 || options.thetas <= 0) {
        throw InputError("resolution and thetas must be positive");
    }
    AmoebaRaster raster;
    raster.grid = Grid(window, options.resolution, options.resolution);
    const Grid& g = raster.grid;
    auto lf = to_log_form(f);
    FiberSolver solve_y(lf, 1);
    FiberSolver solve_x(lf, 0);

    struct SliceResult {
        std::vector<std::size_t> marks;
        std::vector<double> points;
        std::size_t fills = 0;
    };
    std::vector<SliceResult> slots(static_cast<std::size_t>(g.nx + g.ny));
    parallel_for(slots.size(), [&](std::size_t s) {
        bool column = s < static_cast<std::size_t>(g.nx);
        int line = column ? static_cast<int>(s) : static_cast<int>(s) - g.nx;
        double u = column ? g.center_x(line) : g.center_y(line);
        double lo = column ? window.y0 : window.x0;
        double hi = column ? window.y1 : window.x1;
        double step = column ? g.cell_height() : g.cell_width();
        int cells = column ? g.ny : g.nx;
        TraceLimits lim{lo, hi, step, options.max_depth};
        auto& out = slots[s];
        auto mark = [&](int k) {
            out.marks.push_back(column ? g.index(line, k) : g.index(k, line));
        };
        trace_slice(
            column ? solve_y : solve_x, u, options.thetas, lim,
            [&](double, const std::vector<LogComplex>& roots) {
                if (!options.keep_source) {
                    return;
                }
                for (const auto& r : roots) {
                    if (r.log_modulus >= lo && r.log_modulus <= hi) {
                        out.points.push_back(column ? u : r.log_modulus);
                        out.points.push_back(column ? r.log_modulus : u);
                    }
                }
            },
            [&](double va, double vb, bool unresolved) {
                double a = std::min(va, vb);
                double b = std::max(va, vb);
                if (b < lo || a > hi) {
                    return;
                }
                int ka = std::clamp(static_cast<int>(std::floor((std::max(a, lo) - lo) / step)), 0, cells - 1);
                int kb = std::clamp(static_cast<int>(std::floor((std::min(b, hi) - lo) / step)), 0, cells - 1);
                for (int k = ka; k <= kb; ++k) {
                    mark(k);
                }
                if (unresolved) {
                    ++out.fills;
                }
            });
    });
    raster.occupancy.assign(g.size(), 0);
    for (const auto& s : slots) {
        for (auto k : s.marks) {
            raster.occupancy[k] = 1;
        }
        raster.source.coords.insert(raster.source.coords.end(), s.points.begin(), s.points.end());
        raster.interval_fills += s.fills;
    }
    return raster;
}

Window default_window(const LaurentPolynomial& f, double pad) {
    require_planar(f);
    auto verts = tropical_vertices(f);
    if (verts.empty()) {
        if (f.size() < 2) {
            throw InputError("a monomial has an empty amoeba");
        }
        return Window{-pad, pad, -pad, pad};
    }
    Window w{kInf, -kInf, kInf, -kInf};
    for (const auto& v : verts) {
        w.x0 = std::min(w.x0, v[0]);
        w.x1 = std::max(w.x1, v[0]);
        w.y0 = std::min(w.y0, v[1]);
        w.y1 = std::max(w.y1, v[1]);
    }
    return w.padded(pad);
}

// ---------------------------------------------------------------------------
// Membership and orders
// ---------------------------------------------------------------------------

Membership membership(const LaurentPolynomial& f, std::span<const double> u, double tol, int thetas) {
    require_planar(f);
    if (u.size() != 2) {
        throw InputError("membership expects a point in the plane");
    }
    auto lf = to_log_form(f);
    FiberSolver solve_y(lf, 1);
    FiberSolver solve_x(lf, 0);
    double best = kInf;
    for (int k = 0; k < thetas; ++k) {
        double theta = kTwoPi * k / thetas;
        for (const auto& r : solve_y.solve(u[0], theta).roots) {
            best = std::min(best, std::abs(r.log_modulus - u[1]));
        }
        for (const auto& r : solve_x.solve(u[1], theta).roots) {
            best = std::min(best, std::abs(r.log_modulus - u[0]));
        }
    }
    return {best <= tol, best};
}

OrderResult order_of_point(const LogPolynomial& f, std::span<const double> u, int draws, std::uint64_t seed) {
    if (u.size() != 2) {
        throw InputError("order_of_point expects a point in the plane");
    }
    if (draws <= 0) {
        throw InputError("draws must be positive");
    }
    std::mt19937_64 rng(seed);
    OrderResult out;
    out.clearance = kInf;
    std::array<std::optional<FiberSolver>, 2> solvers;
    std::array<int, 2> fixed_order{0, 0};
    for (int j = 0; j < 2; ++j) {
        int lo = std::numeric_limits<int>::max();
        int hi = std::numeric_limits<int>::min();
        for (const auto& t : f.terms) {
            lo = std::min(lo, t.exponent[static_cast<std::size_t>(j)]);
            hi = std::max(hi, t.exponent[static_cast<std::size_t>(j)]);
        }
        if (lo == hi) {
            fixed_order[static_cast<std::size_t>(j)] = lo;
        } else {
            solvers[static_cast<std::size_t>(j)].emplace(f, j);
        }
    }
    std::optional<LatticePoint> first;
    for (int d = 0; d < draws; ++d) {
        LatticePoint nu(2);
        for (std::size_t j = 0; j < 2; ++j) {
            double psi = kTwoPi * uniform01(rng);
            if (!solvers[j]) {
                nu[j] = fixed_order[j];
                continue;
            }
            auto rs = solvers[j]->solve(u[1 - j], psi);
            int inside = rs.zero_roots;
            for (const auto& r : rs.roots) {
                double gap = std::abs(r.log_modulus - u[j]);
                out.clearance = std::min(out.clearance, gap);
                if (gap < 1e-9) {
                    out.indeterminate = true;
                }
                if (r.log_modulus < u[j]) {
                    ++inside;
                }
            }
            nu[j] = solvers[j]->min_degree() + inside;
        }
        if (!first) {
            first = nu;
        } else if (*first != nu) {
            out.indeterminate = true;
        }
    }
    if (!out.indeterminate) {
        out.order = first;
    }
    return out;
}

OrderResult order_of_point(const LaurentPolynomial& f, std::span<const double> u, int draws, std::uint64_t seed) {
    require_planar(f);
    return order_of_point(to_log_form(f), u, draws, seed);
}

// ---------------------------------------------------------------------------
// Complement components
// ---------------------------------------------------------------------------

std::vector<double> clearance_map(const AmoebaRaster& raster) {
    const Grid& g = raster.grid;
    std::vector<double> d(g.size(), kInf);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (raster.occupancy[k]) {
            d[k] = 0.0;
        }
    }
    const double w = g.cell_width();
    const double h = g.cell_height();
    const double diag = std::hypot(w, h);
    auto relax = [&](int i, int j, int a, int b, double c) {
        if (a < 0 || b < 0 || a >= g.nx || b >= g.ny) {
            return;
        }
        double& t = d[g.index(i, j)];
        t = std::min(t, d[g.index(a, b)] + c);
    };
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            relax(i, j, i - 1, j, w);
            relax(i, j, i, j - 1, h);
            relax(i, j, i - 1, j - 1, diag);
            relax(i, j, i + 1, j - 1, diag);
        }
    }
    for (int j = g.ny - 1; j >= 0; --j) {
        for (int i = g.nx - 1; i >= 0; --i) {
            relax(i, j, i + 1, j, w);
            relax(i, j, i, j + 1, h);
            relax(i, j, i + 1, j + 1, diag);
            relax(i, j, i - 1, j + 1, diag);
        }
    }
    return d;
}

std::vector<ComplementComponent> complement_components(const LaurentPolynomial& f, const AmoebaRaster& raster,
                                                       int draws, std::uint64_t seed) {
    require_planar(f);
    const Grid& g = raster.grid;
    auto labeling = label_components(g, raster.occupancy);
    auto clear = clearance_map(raster);
    auto lf = to_log_form(f);
    std::vector<ComplementComponent> out(labeling.components.size());
    parallel_for(out.size(), [&](std::size_t c) {
        const auto& comp = labeling.components[c];
        std::size_t best = comp.cells.front();
        for (auto k : comp.cells) {
            if (clear[k] > clear[best]) {
                best = k;
            }
        }
        int i = static_cast<int>(best % static_cast<std::size_t>(g.nx));
        int j = static_cast<int>(best / static_cast<std::size_t>(g.nx));
        ComplementComponent& cc = out[c];
        cc.representative = {g.center_x(i), g.center_y(j)};
        cc.cells = comp.cells;
        cc.bounded = !comp.touches_boundary;
        cc.clearance = clear[best];
        cc.order = order_of_point(lf, cc.representative, draws, seed).order;
    });
    return out;
}

std::vector<RealPoint> complement_probes(const AmoebaRaster& raster, std::size_t count, double min_clearance,
                                         std::uint64_t seed) {
    auto clear = clearance_map(raster);
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < clear.size(); ++k) {
        if (!raster.occupancy[k] && clear[k] > min_clearance) {
            candidates.push_back(k);
        }
    }
    std::mt19937_64 rng(seed);
    std::vector<RealPoint> out;
    for (std::size_t n = 0; n < count && n < candidates.size(); ++n) {
        auto pick = n + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(candidates.size() - n));
        std::swap(candidates[n], candidates[pick]);
        auto k = candidates[n];
        int i = static_cast<int>(k % static_cast<std::size_t>(raster.grid.nx));
        int j = static_cast<int>(k / static_cast<std::size_t>(raster.grid.nx));
        out.push_back({raster.grid.center_x(i), raster.grid.center_y(j)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Solid:
        return "solid";
    case Verdict::Optimal:
        return "optimal";
    case Verdict::Neither:
        return "neither";
    case Verdict::Indeterminate:
        break;
    }
    return "indeterminate";
}

Classification classify(const LaurentPolynomial& f, const ClassifyOptions& options) {
    require_planar(f);
    Classification out;
    out.window = options.window ? *options.window : default_window(f);
    auto polytope = newton_polytope(f);
    out.vertices = polytope.vertices;
    std::sort(out.vertices.begin(), out.vertices.end());
    out.lattice_points = lattice_points(polytope);

    auto raster = amoeba_points(f, out.window, options.raster);
    out.interval_fills = raster.interval_fills;
    out.components = complement_components(f, raster, options.draws, options.seed);

    std::set<LatticePoint> seen;
    for (const auto& c : out.components) {
        if (!c.order) {
            out.notes.push_back("raster component at (" + std::to_string(c.representative[0]) + ", " +
                                std::to_string(c.representative[1]) + ") has no determinate order");
            continue;
        }
        if (!polytope.contains(*c.order)) {
            out.notes.push_back("raster component order lies outside the Newton polytope");
        }
        if (!seen.insert(*c.order).second) {
            out.notes.push_back("two raster components share an order");
        }
    }

    // tropical regions: curve vertices dual to the cells containing each order
    std::vector<LatticePoint> trop_orders;
    std::optional<TropicalCurve> curve;
    if (f.size() >= 2 && affine_dimension(f.support()) == 2) {
        auto t = TropicalPolynomial::from(f);
        curve = tropical_curve_2d(t);
        trop_orders = curve->subdivision.used_vertices;
    }
    auto region = [&](const LatticePoint& a) {
        std::vector<std::array<double, 2>> pts;
        if (!curve) {
            return pts;
        }
        for (std::size_t c = 0; c < curve->subdivision.cells.size(); ++c) {
            const auto& v = curve->subdivision.cells[c].vertices;
            if (std::find(v.begin(), v.end(), a) != v.end()) {
                pts.push_back(curve->vertices[c]);
            }
        }
        return pts;
    };

    auto lf = to_log_form(f);
    std::vector<ComplementComponent> zoomed;
    for (const auto& a : out.lattice_points) {
        OrderEvidence ev;
        ev.order = a;
        if (std::binary_search(out.vertices.begin(), out.vertices.end(), a)) {
            ev.sources.push_back("vertex");
        }
        auto pts = region(a);
        RealPoint start{0.5 * (out.window.x0 + out.window.x1), 0.5 * (out.window.y0 + out.window.y1)};
        if (!pts.empty()) {
            start = {0.0, 0.0};
            for (const auto& p : pts) {
                start[0] += p[0] / static_cast<double>(pts.size());
                start[1] += p[1] / static_cast<double>(pts.size());
            }
        }
        if (f.size() >= 2) {
            ev.margin = maximize_margin(f, a, start);
            if (ev.margin->realizes_order()) {
                ev.sources.push_back("margin");
            }
        }
        if (seen.count(a)) {
            ev.sources.push_back("raster");
        }
        bool interior_tropical = std::binary_search(trop_orders.begin(), trop_orders.end(), a) &&
                                 !std::binary_search(out.vertices.begin(), out.vertices.end(), a);
        if (!seen.count(a) && interior_tropical && pts.size() >= 3) {
            Window zw{kInf, -kInf, kInf, -kInf};
            for (const auto& p : pts) {
                zw.x0 = std::min(zw.x0, p[0]);
                zw.x1 = std::max(zw.x1, p[0]);
                zw.y0 = std::min(zw.y0, p[1]);
                zw.y1 = std::max(zw.y1, p[1]);
            }
            double pad = std::max({0.5, 0.25 * zw.width(), 0.25 * zw.height()});
            zw = zw.padded(pad);
            RasterOptions ro = options.raster;
            ro.resolution = options.zoom_resolution;
            ro.keep_source = false;
            auto local = amoeba_points(f, zw, ro);
            for (auto& c : complement_components(f, local, options.draws, options.seed)) {
                if (c.bounded && c.order == a) {
                    c.source = "zoom";
                    c.cells.clear();
                    zoomed.push_back(std::move(c));
                    ev.sources.push_back("zoom");
                    break;
                }
            }
        }
        ev.realized = !ev.sources.empty();
        if (ev.realized) {
            out.realized.push_back(a);
        } else {
            out.missing.push_back(a);
        }
        out.evidence.push_back(std::move(ev));
    }
    for (auto& z : zoomed) {
        out.components.push_back(std::move(z));
    }

    out.solid = out.realized == out.vertices;
    out.optimal = out.realized == out.lattice_points;
    if (!out.notes.empty()) {
        out.verdict = Verdict::Indeterminate;
    } else if (out.optimal) {
        out.verdict = Verdict::Optimal;
    } else if (out.solid) {
        out.verdict = Verdict::Solid;
    } else {
        out.verdict = Verdict::Neither;
    }
    return out;
}

} // namespace atlas
