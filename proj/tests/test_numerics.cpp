#include "atlas/error.hpp"
#include "atlas/numerics.hpp"
#include "atlas/parallel.hpp"
#include "atlas/poly.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace atlas;

namespace {

// Coefficients of prod (t - z_k), ascending.
std::vector<Complex> expand(const std::vector<Complex>& zs, Complex lead) {
    std::vector<Complex> c{lead};
    for (const auto& z : zs) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= z * c[k];
        }
        c = next;
    }
    return c;
}

double brute_directed(const PointCloud& a, const PointCloud& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            double s = 0;
            for (int d = 0; d < a.dimension; ++d) {
                double e = a.point(i)[d] - b.point(j)[d];
                s += e * e;
            }
            best = std::min(best, std::sqrt(s));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

PointCloud cloud(std::initializer_list<std::initializer_list<double>> pts) {
    PointCloud c;
    for (auto p : pts) {
        c.coords.insert(c.coords.end(), p.begin(), p.end());
    }
    return c;
}

} // namespace

TEST_CASE("simple roots") {
    std::vector<Complex> a = {-1.0, 0.0, 1.0};
    auto r = roots(a);
    REQUIRE(r.roots.size() == 2);
    std::vector<double> re = {r.roots[0].real(), r.roots[1].real()};
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-1.0));
    CHECK(re[1] == doctest::Approx(1.0));
    std::vector<Complex> b = {1.0, 0.0, 1.0};
    auto s = roots(b);
    std::vector<double> im = {s.roots[0].imag(), s.roots[1].imag()};
    std::sort(im.begin(), im.end());
    CHECK(im[0] == doctest::Approx(-1.0));
    CHECK(im[1] == doctest::Approx(1.0));
    // (t - 2)^3
    std::vector<Complex> c = {-8.0, 12.0, -6.0, 1.0};
    for (const auto& z : roots(c).roots) {
        CHECK(std::abs(z - 2.0) < 1e-4);
    }
    std::vector<Complex> zero = {0.0, 0.0};
    CHECK_THROWS_AS(roots(zero), InputError);
}

TEST_CASE("Vieta: roots reproduce the coefficients") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> deg(1, 20);
    for (int trial = 0; trial < 200; ++trial) {
        int d = deg(rng);
        std::vector<Complex> c;
        for (int k = 0; k <= d; ++k) {
            c.emplace_back(g(rng), g(rng));
        }
        auto r = roots(c);
        REQUIRE(r.roots.size() == static_cast<std::size_t>(d));
        CHECK(r.converged);
        auto back = expand(r.roots, c.back());
        double scale = 0;
        for (const auto& x : c) {
            scale = std::max(scale, std::abs(x));
        }
        for (int k = 0; k <= d; ++k) {
            CHECK(std::abs(back[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)]) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("roots with widely spread coefficient moduli") {
    // 1 + e^1000 t + e^1500 t^2: roots near -e^-1000 and -e^-500
    std::vector<LogComplex> c = {{0.0, 0.0}, {1000.0, 0.0}, {1500.0, 0.0}};
    auto r = roots_log_space(c);
    REQUIRE(r.roots.size() == 2);
    std::vector<double> lm = {r.roots[0].log_modulus, r.roots[1].log_modulus};
    std::sort(lm.begin(), lm.end());
    CHECK(lm[0] == doctest::Approx(-1000.0));
    CHECK(lm[1] == doctest::Approx(-500.0));
    for (const auto& z : r.roots) {
        CHECK(std::abs(std::cos(z.phase) + 1.0) < 1e-9);
    }
    // zero low-order coefficients become roots at 0
    std::vector<LogComplex> z = {{-std::numeric_limits<double>::infinity(), 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    auto rz = roots_log_space(z);
    CHECK(rz.zero_roots == 1);
    CHECK(rz.roots.size() == 1);
}

TEST_CASE("log_sum") {
    std::vector<LogComplex> t = {{std::log(3.0), 0.0}, {std::log(4.0), M_PI / 2}};
    auto s = log_sum(t);
    CHECK(s.log_modulus == doctest::Approx(std::log(5.0)));
    CHECK(s.phase == doctest::Approx(std::atan2(4.0, 3.0)));
}

TEST_CASE("softmax is stable for logit spread 1e3") {
    std::vector<double> l = {0.0, 1000.0, -1000.0, 999.0};
    auto w = softmax_weights(l);
    double sum = 0;
    for (double x : w) {
        CHECK(std::isfinite(x));
        CHECK(x >= 0.0);
        sum += x;
    }
    CHECK(sum == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
    CHECK(w[2] == 0.0);
    CHECK(log_sum_exp(l) == doctest::Approx(1000.0 + std::log1p(std::exp(-1.0))));
    std::vector<double> big = {1e5, 1e5};
    CHECK(log_sum_exp(big) == doctest::Approx(1e5 + std::log(2.0)));
}

TEST_CASE("Hausdorff distances") {
    CHECK(hausdorff_distance(cloud({{0, 0}}), cloud({{3, 4}})) == doctest::Approx(5.0));
    auto a = cloud({{0, 0}, {1, 0}});
    auto b = cloud({{0, 0}, {1, 0}, {4, 0}});
    CHECK(directed_hausdorff(a, b) == 0.0);
    CHECK(directed_hausdorff(b, a) == doctest::Approx(3.0));
    CHECK(hausdorff_distance(b, b) == 0.0);
    CHECK_THROWS_AS(hausdorff_distance(PointCloud{}, a), InputError);

    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        PointCloud p, q;
        for (int k = 0; k < 150; ++k) {
            double x[2] = {g(rng), g(rng)};
            p.push(x);
            double y[2] = {g(rng) + 0.3, g(rng)};
            q.push(y);
        }
        CHECK(directed_hausdorff(p, q) == doctest::Approx(brute_directed(p, q)).epsilon(1e-12));
        CHECK(hausdorff_distance(p, q) ==
              doctest::Approx(std::max(brute_directed(p, q), brute_directed(q, p))).epsilon(1e-12));
    }
}

TEST_CASE("margin gradient and Hessian match finite differences") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0, 2);
    for (const auto& text : fixtures::kSix) {
        auto f = parse_polynomial(text);
        for (const auto& alpha : f.support()) {
            MarginObjective m(f, alpha);
            for (int k = 0; k < 5; ++k) {
                double u[2] = {g(rng), g(rng)};
                auto grad = m.gradient(u);
                auto hess = m.hessian(u);
                for (int d = 0; d < 2; ++d) {
                    const double h = 1e-5;
                    double up[2] = {u[0], u[1]};
                    double dn[2] = {u[0], u[1]};
                    up[d] += h;
                    dn[d] -= h;
                    double fd = (m.value(up) - m.value(dn)) / (2 * h);
                    CHECK(std::abs(fd - grad[static_cast<std::size_t>(d)]) < 1e-6);
                    auto gu = m.gradient(up);
                    auto gd = m.gradient(dn);
                    for (int e = 0; e < 2; ++e) {
                        double fd2 = (gu[static_cast<std::size_t>(e)] - gd[static_cast<std::size_t>(e)]) / (2 * h);
                        CHECK(std::abs(fd2 - hess[static_cast<std::size_t>(e * 2 + d)]) < 1e-5);
                    }
                }
            }
        }
    }
}

TEST_CASE("margin objective is concave") {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g(0, 4);
    auto f = parse_polynomial(fixtures::kEleven);
    auto support = f.support();
    int checked = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto& alpha = support[static_cast<std::size_t>(k) % support.size()];
        MarginObjective m(f, alpha);
        double a[2] = {g(rng), g(rng)};
        double b[2] = {g(rng), g(rng)};
        double t = uniform01(rng);
        double c[2] = {t * a[0] + (1 - t) * b[0], t * a[1] + (1 - t) * b[1]};
        double lhs = m.value(c);
        double rhs = t * m.value(a) + (1 - t) * m.value(b);
        CHECK(lhs >= rhs - 1e-9 * (1 + std::abs(rhs)));
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("margin maximization") {
    auto line = parse_polynomial("1+x+y");
    MarginObjective m(line, {0, 0});
    double far[2] = {-10, -10};
    CHECK(m.value(far) == doctest::Approx(10 - std::log(2.0)).epsilon(1e-6));
    double origin[2] = {0, 0};
    auto grad = m.gradient(origin);
    CHECK(grad[0] < 0);
    CHECK(grad[1] < 0);

    auto r = maximize_margin(line, {1, 0}, origin);
    CHECK(r.status == MarginStatus::Unbounded);
    CHECK(r.realizes_order());

    // 5xy beats the four corners at the origin
    auto hole = maximize_margin(parse_polynomial(fixtures::kDiamond), {1, 1}, origin);
    CHECK(hole.status == MarginStatus::Certified);
    CHECK(hole.margin > 0);

    // x+y+x^2y^2+2xy: best margin at (1,1) is log(2/3)
    auto two = maximize_margin(parse_polynomial(fixtures::kHole), {1, 1}, origin);
    CHECK(two.status == MarginStatus::NotCertified);
    CHECK(two.margin == doctest::Approx(std::log(2.0 / 3)).epsilon(1e-6));

    auto none = maximize_margin(parse_polynomial(fixtures::kNoHole), {1, 1}, origin);
    CHECK_FALSE(none.realizes_order());
    CHECK(none.margin <= 0);

    // (1,1) is not in the support: no certificate, margin -inf
    auto lacking = parse_polynomial(fixtures::kLacking);
    auto absent = maximize_margin(lacking, {1, 1}, origin);
    CHECK(absent.status == MarginStatus::NotCertified);
    CHECK(std::isinf(absent.margin));

    // grid oracle: the maximum found is not beaten on a grid
    auto five = parse_polynomial(fixtures::kFive);
    auto best = maximize_margin(five, {2, 1}, origin);
    MarginObjective g21(five, {2, 1});
    double grid_best = -1e300;
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
            double u[2] = {-5 + 0.1 * i, -5 + 0.1 * j};
            grid_best = std::max(grid_best, g21.value(u));
        }
    }
    CHECK(best.margin >= grid_best - 1e-9);
    CHECK(best.status == MarginStatus::Certified);
}

TEST_CASE("uniform draws") {
    std::mt19937_64 a(1), b(1);
    for (int k = 0; k < 1000; ++k) {
        double x = uniform01(a);
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        CHECK(x == uniform01(b));
    }
}

TEST_CASE("parallel_for fills every slot and propagates errors") {
    std::vector<int> out(1000, 0);
    parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i * i % 97); });
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i] == static_cast<int>(i * i % 97));
    }
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 3) {
                            throw InputError("boom");
                        }
                    }),
                    InputError);
    CHECK(thread_count() >= 1);
}
