#pragma once

#include "atlas/point_cloud.hpp"
#include "atlas/types.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

namespace atlas {

class LaurentPolynomial;

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Univariate roots
// ---------------------------------------------------------------------------

struct RootOptions {
    double tolerance = 1e-12;
    int max_iterations = 200;
    /// Leading coefficients at or below this fraction of the largest modulus are
    /// treated as zero (degree drop).
    double leading_zero_threshold = 1e-14;
};

struct RootSet {
    std::vector<Complex> roots;
    /// Largest componentwise backward error |p(z)| / sum |c_k||z|^k over the roots.
    double residual_bound = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// All complex roots of c_0 + c_1 t + ... + c_d t^d (ascending coefficients) by
/// Aberth-Ehrlich simultaneous iteration. Starting points lie on the circles of
/// the coefficient Newton polygon. Throws InputError for the zero polynomial or
/// when the degree is below 1 after trimming.
RootSet roots(std::span<const Complex> coeffs, double tolerance = 1e-12);
RootSet roots(std::span<const Complex> coeffs, const RootOptions& options);

/// exp(log_modulus + i phase); log_modulus = -inf encodes zero.
struct LogComplex {
    double log_modulus;
    double phase;
};

struct LogRootSet {
    std::vector<LogComplex> roots;
    /// Multiplicity of the root t = 0 (vanishing low-order coefficients).
    int zero_roots = 0;
    bool converged = true;
};

/// Roots of a polynomial whose coefficients are given in log form, so that
/// coefficient moduli may span far beyond the double range. Root groups whose
/// Newton-polygon radii are separated by more than e^30 are solved independently
/// on rescaled, truncated polynomials.
LogRootSet roots_log_space(std::span<const LogComplex> coeffs);

/// Sum of exp(a_k + i b_k) in log form.
LogComplex log_sum(std::span<const LogComplex> terms);

// ---------------------------------------------------------------------------
// Softmax
// ---------------------------------------------------------------------------

double log_sum_exp(std::span<const double> logits);

/// exp(l_i - max l) / sum_j exp(l_j - max l). Never overflows for finite logits.
std::vector<double> softmax_weights(std::span<const double> logits);

// ---------------------------------------------------------------------------
// Nearest neighbours and Hausdorff distance
// ---------------------------------------------------------------------------

class KdTree {
public:
    explicit KdTree(const PointCloud& cloud);
    KdTree(const KdTree&) = delete;
    KdTree& operator=(const KdTree&) = delete;
    KdTree(KdTree&&) noexcept;
    KdTree& operator=(KdTree&&) noexcept;
    ~KdTree();

    /// Euclidean distance from q to the nearest stored point.
    double nearest_distance(std::span<const double> q) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// sup_{a in A} d(a, B).
double directed_hausdorff(const PointCloud& a, const PointCloud& b);

/// max{sup_a d(a,B), sup_b d(A,b)}, Euclidean. Throws InputError on empty input.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

// ---------------------------------------------------------------------------
// Margin maximization (lopsidedness search)
// ---------------------------------------------------------------------------

/// g(u) = log|a_alpha| + <alpha,u> - logsumexp_{beta != alpha}(log|a_beta| + <beta,u>).
/// g(u) > 0 iff the alpha term dominates the sum of all others at Log x = u.
class MarginObjective {
public:
    MarginObjective(const LaurentPolynomial& f, const LatticePoint& alpha);

    double value(std::span<const double> u) const;
    RealPoint gradient(std::span<const double> u) const;
    /// Row-major Hessian, minus the covariance of the other exponents under their
    /// softmax weights.
    std::vector<double> hessian(std::span<const double> u) const;

private:
    LatticePoint alpha_;
    double alpha_height_ = 0.0;
    std::vector<double> weights(std::span<const double> u) const;

    std::vector<LatticePoint> others_;
    std::vector<double> other_heights_;
};

enum class MarginStatus {
    Certified,    ///< a point with g > 0 was found
    Unbounded,    ///< g grows without bound (alpha is a vertex)
    NotCertified, ///< converged to a maximum with g <= 0
    NotConverged, ///< iteration cap hit with g <= 0
};

struct MarginOptions {
    int max_iterations = 500;
    double unbounded_radius = 1e3;
    double gradient_tolerance = 1e-10;
    double armijo = 1e-4;
};

struct MarginResult {
    RealPoint point;
    double margin = 0.0;
    MarginStatus status = MarginStatus::NotConverged;
    int iterations = 0;

    bool realizes_order() const { return status == MarginStatus::Certified || status == MarginStatus::Unbounded; }
};

/// Ascent on g with backtracking (Armijo) steps along the Newton direction when the
/// Hessian is well conditioned, along the gradient otherwise. Requires at least two terms. An
/// alpha outside the support has g = -inf and is reported NotCertified at once.
MarginResult maximize_margin(const LaurentPolynomial& f, const LatticePoint& alpha, std::span<const double> start,
                             const MarginOptions& options = {});

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

/// Uniform double in [0, 1) with 53 random bits, identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace atlas
