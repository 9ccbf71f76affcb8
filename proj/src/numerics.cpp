#include "atlas/numerics.hpp"

#include "atlas/error.hpp"
#include "atlas/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace atlas {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
/// Root groups whose log radii differ by more than this are solved separately.
constexpr double kClusterGap = 30.0;

struct Evaluation {
    Complex newton;      // p(z) / p'(z)
    double backward = 0; // |p(z)| / sum |c_k| |z|^k
};

/// Newton correction and backward error, evaluated on the reversed polynomial for
/// |z| > 1 so that neither overflows.
Evaluation evaluate_at(const std::vector<Complex>& c, Complex z) {
    const std::size_t d = c.size() - 1;
    Evaluation ev;
    if (std::abs(z) <= 1.0) {
        Complex p = c[d];
        Complex dp = 0.0;
        double mag = std::abs(c[d]);
        double az = std::abs(z);
        for (std::size_t k = d; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + c[k];
            mag = mag * az + std::abs(c[k]);
        }
        ev.newton = dp == Complex(0.0) ? Complex(0.0) : p / dp;
        ev.backward = mag > 0 ? std::abs(p) / mag : 0.0;
        if (dp == Complex(0.0) && p != Complex(0.0)) {
            ev.newton = Complex(1e-3, 1e-3);
        }
        return ev;
    }
    Complex w = 1.0 / z;
    double aw = std::abs(w);
    Complex q = c[0];
    Complex dq = 0.0;
    double mag = std::abs(c[0]);
    for (std::size_t k = 1; k <= d; ++k) {
        dq = dq * w + q;
        q = q * w + c[k];
        mag = mag * aw + std::abs(c[k]);
    }
    // p(z) = z^d q(w), p'(z) = z^{d-1} (d q(w) - w q'(w))
    Complex denom = static_cast<double>(d) * q - w * dq;
    ev.newton = denom == Complex(0.0) ? Complex(1e-3, 1e-3) * z : z * q / denom;
    ev.backward = mag > 0 ? std::abs(q) / mag : 0.0;
    return ev;
}

/// Starting points on the circles of the upper convex hull of (k, log|c_k|).
std::vector<Complex> initial_guesses(const std::vector<Complex>& c) {
    const std::size_t d = c.size() - 1;
    std::vector<std::size_t> hull;
    auto lg = [&](std::size_t k) { return std::log(std::abs(c[k])); };
    for (std::size_t k = 0; k <= d; ++k) {
        if (c[k] == Complex(0.0)) {
            continue;
        }
        while (hull.size() >= 2) {
            auto a = hull[hull.size() - 2];
            auto b = hull.back();
            double cr = (static_cast<double>(b) - a) * (lg(k) - lg(a)) - (lg(b) - lg(a)) * (static_cast<double>(k) - a);
            if (cr >= 0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(k);
    }
    std::vector<Complex> z;
    z.reserve(d);
    const double sigma = 0.7;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        auto a = hull[s];
        auto b = hull[s + 1];
        auto m = b - a;
        double radius = std::exp((lg(a) - lg(b)) / static_cast<double>(m));
        for (std::size_t j = 0; j < m; ++j) {
            double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m) +
                           2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(d) + sigma;
            z.push_back(std::polar(radius, angle));
        }
    }
    return z;
}

RootSet aberth(const std::vector<Complex>& c, const RootOptions& options) {
    const std::size_t d = c.size() - 1;
    RootSet out;
    if (d == 1) {
        out.roots = {-c[0] / c[1]};
        out.converged = true;
        out.residual_bound = evaluate_at(c, out.roots[0]).backward;
        return out;
    }
    std::vector<Complex> z = initial_guesses(c);
    std::vector<bool> frozen(d, false);
    std::size_t active = d;
    int it = 0;
    for (; it < options.max_iterations && active > 0; ++it) {
        for (std::size_t i = 0; i < d; ++i) {
            if (frozen[i]) {
                continue;
            }
            Evaluation ev = evaluate_at(c, z[i]);
            if (ev.backward <= 4.0 * kEps * static_cast<double>(d + 1)) {
                frozen[i] = true;
                --active;
                continue;
            }
            Complex sum = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                if (j != i) {
                    Complex diff = z[i] - z[j];
                    if (diff != Complex(0.0)) {
                        sum += 1.0 / diff;
                    }
                }
            }
            Complex w = ev.newton / (1.0 - ev.newton * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                w = ev.newton;
            }
            z[i] -= w;
            if (std::abs(w) <= options.tolerance * std::abs(z[i])) {
                frozen[i] = true;
                --active;
            }
        }
    }
    out.roots = std::move(z);
    out.iterations = it;
    out.converged = active == 0;
    for (const auto& r : out.roots) {
        out.residual_bound = std::max(out.residual_bound, evaluate_at(c, r).backward);
    }
    return out;
}

} // namespace

RootSet roots(std::span<const Complex> coeffs, double tolerance) {
    RootOptions options;
    options.tolerance = tolerance;
    return roots(coeffs, options);
}

RootSet roots(std::span<const Complex> coeffs, const RootOptions& options) {
    double maxmod = 0.0;
    for (const auto& c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw InputError("non-finite polynomial coefficient");
        }
        maxmod = std::max(maxmod, std::abs(c));
    }
    if (maxmod == 0.0) {
        throw InputError("zero polynomial has no well-defined roots");
    }
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    for (auto& x : c) {
        x /= maxmod;
    }
    while (c.size() > 1 && std::abs(c.back()) <= options.leading_zero_threshold) {
        c.pop_back();
    }
    if (c.size() < 2) {
        throw InputError("polynomial has degree < 1 after trimming");
    }
    std::size_t zeros = 0;
    while (c[zeros] == Complex(0.0)) {
        ++zeros;
    }
    RootSet out;
    std::vector<Complex> rest(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end());
    if (rest.size() >= 2) {
        out = aberth(rest, options);
    } else {
        out.converged = true;
    }
    out.roots.insert(out.roots.end(), zeros, Complex(0.0));
    return out;
}

LogComplex log_sum(std::span<const LogComplex> terms) {
    double m = -kInf;
    for (const auto& t : terms) {
        m = std::max(m, t.log_modulus);
    }
    if (m == -kInf) {
        return {-kInf, 0.0};
    }
    Complex s = 0.0;
    for (const auto& t : terms) {
        if (t.log_modulus > -kInf) {
            s += std::polar(std::exp(t.log_modulus - m), t.phase);
        }
    }
    double a = std::abs(s);
    if (a == 0.0) {
        return {-kInf, 0.0};
    }
    return {m + std::log(a), std::arg(s)};
}

LogRootSet roots_log_space(std::span<const LogComplex> coeffs) {
    LogRootSet out;
    std::vector<std::size_t> finite;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].log_modulus > -kInf) {
            finite.push_back(j);
        }
    }
    if (finite.empty()) {
        throw InputError("zero polynomial has no well-defined roots");
    }
    out.zero_roots = static_cast<int>(finite.front());
    if (finite.size() == 1) {
        return out;
    }
    // Newton polygon: upper hull of (j, L_j)
    auto L = [&](std::size_t j) { return coeffs[j].log_modulus; };
    std::vector<std::size_t> hull;
    for (auto j : finite) {
        while (hull.size() >= 2) {
            auto a = hull[hull.size() - 2];
            auto b = hull.back();
            double cr = (static_cast<double>(b) - a) * (L(j) - L(a)) - (L(b) - L(a)) * (static_cast<double>(j) - a);
            if (cr >= 0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(j);
    }
    // log radius of each segment, increasing along the hull
    std::vector<double> rho;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        rho.push_back((L(hull[s]) - L(hull[s + 1])) / static_cast<double>(hull[s + 1] - hull[s]));
    }
    std::size_t s = 0;
    while (s < rho.size()) {
        std::size_t e = s;
        while (e + 1 < rho.size() && rho[e + 1] - rho[e] <= kClusterGap) {
            ++e;
        }
        // segments s..e form one group spanning degrees hull[s]..hull[e+1]
        std::size_t lo = hull[s];
        std::size_t hi = hull[e + 1];
        double weight = 0.0;
        double center = 0.0;
        for (std::size_t k = s; k <= e; ++k) {
            double len = static_cast<double>(hull[k + 1] - hull[k]);
            center += rho[k] * len;
            weight += len;
        }
        center /= weight;
        double top = -kInf;
        for (std::size_t j = lo; j <= hi; ++j) {
            if (L(j) > -kInf) {
                top = std::max(top, L(j) + static_cast<double>(j) * center);
            }
        }
        std::vector<Complex> c(hi - lo + 1, 0.0);
        for (std::size_t j = lo; j <= hi; ++j) {
            if (L(j) > -kInf) {
                c[j - lo] = std::polar(std::exp(L(j) + static_cast<double>(j) * center - top), coeffs[j].phase);
            }
        }
        RootOptions opts;
        opts.leading_zero_threshold = 0.0;
        RootSet rs = roots(c, opts);
        out.converged = out.converged && rs.converged;
        for (const auto& t : rs.roots) {
            if (t == Complex(0.0)) {
                ++out.zero_roots;
                continue;
            }
            out.roots.push_back({center + std::log(std::abs(t)), std::arg(t)});
        }
        s = e + 1;
    }
    return out;
}

double log_sum_exp(std::span<const double> logits) {
    if (logits.empty()) {
        return -kInf;
    }
    double m = *std::max_element(logits.begin(), logits.end());
    if (!std::isfinite(m)) {
        return m;
    }
    double s = 0.0;
    for (double l : logits) {
        s += std::exp(l - m);
    }
    return m + std::log(s);
}

std::vector<double> softmax_weights(std::span<const double> logits) {
    if (logits.empty()) {
        throw InputError("softmax of an empty vector");
    }
    double m = *std::max_element(logits.begin(), logits.end());
    std::vector<double> w(logits.size());
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(logits[i] - m);
        s += w[i];
    }
    for (auto& x : w) {
        x /= s;
    }
    return w;
}

// ---------------------------------------------------------------------------
// kd-tree
// ---------------------------------------------------------------------------

struct KdTree::Impl {
    struct Node {
        int axis = -1; // -1 marks a leaf
        double split = 0.0;
        std::size_t left = 0;
        std::size_t right = 0;
        std::size_t begin = 0;
        std::size_t end = 0;
    };

    int dim = 0;
    std::vector<double> pts;
    std::vector<std::size_t> index;
    std::vector<Node> nodes;
    static constexpr std::size_t kLeaf = 12;

    double coord(std::size_t i, int axis) const { return pts[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(axis)]; }

    std::size_t build(std::size_t begin, std::size_t end) {
        std::size_t id = nodes.size();
        nodes.push_back({});
        if (end - begin <= kLeaf) {
            nodes[id].begin = begin;
            nodes[id].end = end;
            return id;
        }
        int axis = 0;
        double best = -1.0;
        for (int a = 0; a < dim; ++a) {
            double lo = kInf;
            double hi = -kInf;
            for (std::size_t k = begin; k < end; ++k) {
                lo = std::min(lo, coord(index[k], a));
                hi = std::max(hi, coord(index[k], a));
            }
            if (hi - lo > best) {
                best = hi - lo;
                axis = a;
            }
        }
        std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(index.begin() + static_cast<std::ptrdiff_t>(begin), index.begin() + static_cast<std::ptrdiff_t>(mid),
                         index.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) { return coord(a, axis) < coord(b, axis); });
        double split = coord(index[mid], axis);
        std::size_t l = build(begin, mid);
        std::size_t r = build(mid, end);
        nodes[id].axis = axis;
        nodes[id].split = split;
        nodes[id].left = l;
        nodes[id].right = r;
        return id;
    }

    void search(std::size_t id, std::span<const double> q, double& best2) const {
        const Node& n = nodes[id];
        if (n.axis < 0) {
            for (std::size_t k = n.begin; k < n.end; ++k) {
                double s = 0.0;
                for (int a = 0; a < dim; ++a) {
                    double d = coord(index[k], a) - q[static_cast<std::size_t>(a)];
                    s += d * d;
                }
                best2 = std::min(best2, s);
            }
            return;
        }
        double diff = q[static_cast<std::size_t>(n.axis)] - n.split;
        std::size_t near = diff < 0 ? n.left : n.right;
        std::size_t far = diff < 0 ? n.right : n.left;
        search(near, q, best2);
        if (diff * diff < best2) {
            search(far, q, best2);
        }
    }
};

KdTree::KdTree(const PointCloud& cloud) : impl_(std::make_unique<Impl>()) {
    if (cloud.empty()) {
        throw InputError("kd-tree over an empty point cloud");
    }
    impl_->dim = cloud.dimension;
    impl_->pts = cloud.coords;
    impl_->index.resize(cloud.size());
    std::iota(impl_->index.begin(), impl_->index.end(), 0);
    impl_->build(0, cloud.size());
}

KdTree::KdTree(KdTree&&) noexcept = default;
KdTree& KdTree::operator=(KdTree&&) noexcept = default;
KdTree::~KdTree() = default;

double KdTree::nearest_distance(std::span<const double> q) const {
    double best2 = kInf;
    impl_->search(0, q, best2);
    return std::sqrt(best2);
}

double directed_hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty()) {
        throw InputError("Hausdorff distance of an empty point cloud");
    }
    if (a.dimension != b.dimension) {
        throw InputError("Hausdorff distance between clouds of different dimension");
    }
    KdTree tree(b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, tree.nearest_distance(a.point(i)));
    }
    return worst;
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

// ---------------------------------------------------------------------------
// Margin
// ---------------------------------------------------------------------------

MarginObjective::MarginObjective(const LaurentPolynomial& f, const LatticePoint& alpha) : alpha_(alpha) {
    alpha_height_ = -kInf;
    for (const auto& t : f.terms()) {
        double h = std::log(std::abs(t.coefficient));
        if (t.exponent == alpha) {
            alpha_height_ = h;
        } else {
            others_.push_back(t.exponent);
            other_heights_.push_back(h);
        }
    }
    if (others_.empty()) {
        throw InputError("margin needs at least two terms");
    }
}

double MarginObjective::value(std::span<const double> u) const {
    double own = alpha_height_;
    for (std::size_t k = 0; k < u.size(); ++k) {
        own += alpha_[k] * u[k];
    }
    std::vector<double> logits(others_.size());
    for (std::size_t i = 0; i < others_.size(); ++i) {
        double l = other_heights_[i];
        for (std::size_t k = 0; k < u.size(); ++k) {
            l += others_[i][k] * u[k];
        }
        logits[i] = l;
    }
    return own - log_sum_exp(logits);
}

std::vector<double> MarginObjective::weights(std::span<const double> u) const {
    std::vector<double> logits(others_.size());
    for (std::size_t i = 0; i < others_.size(); ++i) {
        double l = other_heights_[i];
        for (std::size_t k = 0; k < u.size(); ++k) {
            l += others_[i][k] * u[k];
        }
        logits[i] = l;
    }
    return softmax_weights(logits);
}

RealPoint MarginObjective::gradient(std::span<const double> u) const {
    auto w = weights(u);
    RealPoint g(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        double mean = 0.0;
        for (std::size_t i = 0; i < others_.size(); ++i) {
            mean += w[i] * others_[i][k];
        }
        g[k] = alpha_[k] - mean;
    }
    return g;
}

std::vector<double> MarginObjective::hessian(std::span<const double> u) const {
    auto w = weights(u);
    const std::size_t n = u.size();
    RealPoint mean(n, 0.0);
    for (std::size_t i = 0; i < others_.size(); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            mean[k] += w[i] * others_[i][k];
        }
    }
    std::vector<double> h(n * n, 0.0);
    for (std::size_t i = 0; i < others_.size(); ++i) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                h[a * n + b] -= w[i] * (others_[i][a] - mean[a]) * (others_[i][b] - mean[b]);
            }
        }
    }
    return h;
}

namespace {

/// Solves (-H) d = g by Gaussian elimination with partial pivoting; empty when
/// -H is nearly singular relative to its scale.
RealPoint newton_direction(std::vector<double> a, RealPoint g) {
    const std::size_t n = g.size();
    double scale = 0.0;
    for (auto& x : a) {
        x = -x;
        scale = std::max(scale, std::abs(x));
    }
    if (scale == 0.0) {
        return {};
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) {
                piv = r;
            }
        }
        if (std::abs(a[piv * n + c]) < 1e-8 * scale) {
            return {};
        }
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a[c * n + k], a[piv * n + k]);
            }
            std::swap(g[c], g[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            double m = a[r * n + c] / a[c * n + c];
            for (std::size_t k = c; k < n; ++k) {
                a[r * n + k] -= m * a[c * n + k];
            }
            g[r] -= m * g[c];
        }
    }
    RealPoint d(n);
    for (std::size_t c = n; c-- > 0;) {
        double s = g[c];
        for (std::size_t k = c + 1; k < n; ++k) {
            s -= a[c * n + k] * d[k];
        }
        d[c] = s / a[c * n + c];
    }
    return d;
}

} // namespace

MarginResult maximize_margin(const LaurentPolynomial& f, const LatticePoint& alpha, std::span<const double> start,
                             const MarginOptions& options) {
    MarginObjective g(f, alpha);
    RealPoint u(start.begin(), start.end());
    if (static_cast<int>(u.size()) != f.dimension()) {
        throw InputError("start point dimension does not match polynomial");
    }
    double value = g.value(u);
    MarginResult out;
    if (value == -kInf) {
        // absent monomial: no point is lopsided for it
        out.point = u;
        out.margin = value;
        out.status = MarginStatus::NotCertified;
        return out;
    }
    double step = 1.0;
    bool converged = false;
    bool unbounded = false;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        RealPoint grad = g.gradient(u);
        double gn2 = 0.0;
        for (double x : grad) {
            gn2 += x * x;
        }
        if (std::sqrt(gn2) < options.gradient_tolerance) {
            converged = true;
            break;
        }
        RealPoint dir = newton_direction(g.hessian(u), grad);
        double slope = 0.0;
        for (std::size_t k = 0; k < dir.size(); ++k) {
            slope += dir[k] * grad[k];
        }
        bool newton = !dir.empty() && slope > 0.0 && std::isfinite(slope);
        if (!newton) {
            dir = grad;
            slope = gn2;
        }
        double t = newton ? 1.0 : std::min(step * 2.0, 1e6);
        RealPoint trial(u.size());
        double trial_value = value;
        while (true) {
            for (std::size_t k = 0; k < u.size(); ++k) {
                trial[k] = u[k] + t * dir[k];
            }
            trial_value = g.value(trial);
            if (trial_value >= value + options.armijo * t * slope) {
                break;
            }
            t *= 0.5;
            if (t < 1e-18) {
                break;
            }
        }
        if (t < 1e-18) {
            converged = true;
            break;
        }
        bool increased = trial_value > value;
        u = trial;
        value = trial_value;
        if (!newton) {
            step = t;
        }
        double norm = 0.0;
        for (double x : u) {
            norm += x * x;
        }
        if (std::sqrt(norm) > options.unbounded_radius && increased) {
            unbounded = true;
            break;
        }
    }
    out.point = u;
    out.margin = value;
    out.iterations = it;
    if (unbounded) {
        out.status = MarginStatus::Unbounded;
    } else if (value > 0.0) {
        out.status = MarginStatus::Certified;
    } else {
        out.status = converged ? MarginStatus::NotCertified : MarginStatus::NotConverged;
    }
    return out;
}

} // namespace atlas
