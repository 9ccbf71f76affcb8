#include "atlas/moment.hpp"

#include "atlas/amoeba.hpp"
#include "atlas/error.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/numerics.hpp"
#include "atlas/tropical.hpp"

#include <cmath>
#include <unordered_set>

namespace atlas {

namespace {

RealPoint combine(const std::vector<LatticePoint>& support, const std::vector<double>& logits) {
    auto w = softmax_weights(logits);
    RealPoint p(support.front().size(), 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t k = 0; k < p.size(); ++k) {
            p[k] += w[i] * support[i][k];
        }
    }
    return p;
}

RealPoint log_point(std::span<const Complex> x) {
    RealPoint u(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] == Complex(0.0)) {
            throw InputError("moment map needs all coordinates nonzero");
        }
        u[k] = std::log(std::abs(x[k]));
    }
    return u;
}

struct PairHash {
    std::size_t operator()(const std::pair<long long, long long>& p) const {
        return std::hash<long long>()(p.first * 1000003LL ^ p.second);
    }
};

/// Maps samples through the softmax of `heights + <s,u>` and merges near duplicates.
PointCloud moment_cloud(const LaurentPolynomial& f, const std::vector<double>& heights, double r,
                        const MomentSampling& sampling, const LogPolynomial& solve_form) {
    if (f.dimension() != 2) {
        throw InputError("moment clouds are sampled for n = 2 only");
    }
    auto support = f.support();
    Window base = sampling.window ? *sampling.window : default_window(f, 0.0);
    SamplingPlan plan;
    plan.window = Window{r * base.x0, r * base.x1, r * base.y0, r * base.y1}.padded(sampling.pad);
    plan.slices = sampling.slices;
    plan.thetas = sampling.thetas;
    plan.focus_slices = sampling.focus_slices;
    plan.focus_radius = sampling.focus_radius;
    if (f.size() >= 2 && affine_dimension(support) == 2) {
        for (const auto& v : tropical_curve_2d(TropicalPolynomial::from(f)).vertices) {
            plan.focus.push_back({r * v[0], r * v[1]});
        }
    }
    auto samples = sample_hypersurface(solve_form, plan);

    double quantum = sampling.merge_fraction * newton_polytope(f).diameter();
    PointCloud cloud{Ambient::PolytopeSpace, 2, {}};
    std::unordered_set<std::pair<long long, long long>, PairHash> cells;
    std::vector<double> logits(support.size());
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < support.size(); ++i) {
            logits[i] = heights[i] + support[i][0] * s.log_modulus[0] + support[i][1] * s.log_modulus[1];
        }
        auto p = combine(support, logits);
        if (quantum > 0) {
            std::pair<long long, long long> key{static_cast<long long>(std::floor(p[0] / quantum)),
                                                static_cast<long long>(std::floor(p[1] / quantum))};
            if (!cells.insert(key).second) {
                continue;
            }
        }
        cloud.push(p);
    }
    cloud.sort_lexicographic();
    return cloud;
}

} // namespace

RealPoint moment_map_log(const std::vector<LatticePoint>& support, std::span<const double> u) {
    if (support.empty()) {
        throw InputError("moment map of an empty support");
    }
    std::vector<double> logits(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        double l = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            l += support[i][k] * u[k];
        }
        logits[i] = l;
    }
    return combine(support, logits);
}

RealPoint moment_map(const std::vector<LatticePoint>& support, std::span<const Complex> x) {
    return moment_map_log(support, log_point(x));
}

RealPoint weighted_moment_map_log(const LogPolynomial& f, std::span<const double> u) {
    std::vector<LatticePoint> support;
    std::vector<double> logits;
    for (const auto& t : f.terms) {
        support.push_back(t.exponent);
        double l = t.log_modulus;
        for (std::size_t k = 0; k < u.size(); ++k) {
            l += t.exponent[k] * u[k];
        }
        logits.push_back(l);
    }
    if (support.empty()) {
        throw InputError("moment map of an empty support");
    }
    return combine(support, logits);
}

RealPoint weighted_moment_map(const LaurentPolynomial& f, std::span<const Complex> x) {
    return weighted_moment_map_log(to_log_form(f), log_point(x));
}

PointCloud compactified_amoeba(const LaurentPolynomial& f, const MomentSampling& sampling) {
    std::vector<double> heights(f.size(), 0.0);
    return moment_cloud(f, heights, 1.0, sampling, to_log_form(f));
}

PointCloud wca(const LaurentPolynomial& f, double r, const MomentSampling& sampling) {
    if (!(r >= 1.0) || !std::isfinite(r)) {
        throw InputError("wca needs a finite order r >= 1");
    }
    auto form = hadamard_log_form(f, r);
    std::vector<double> heights;
    for (const auto& t : form.terms) {
        if (t.log_modulus < -300.0 * std::log(10.0)) {
            throw InputError("Hadamard power coefficient underflows below 1e-300");
        }
        heights.push_back(t.log_modulus);
    }
    return moment_cloud(f, heights, r, sampling, form);
}

} // namespace atlas
