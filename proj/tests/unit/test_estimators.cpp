#include <doctest.h>

#include <cmath>

#include "steinfx/estimators.hpp"
#include "steinfx/rng.hpp"

using namespace steinfx;

namespace {

void check_close(const Point& a, const Point& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - b[i]) <= tol);
}

// Random orthogonal matrix via Gram-Schmidt on Gaussian columns; returns Q u.
struct Rotation {
    std::vector<Point> cols;
    Point operator()(const Point& u) const {
        Point out(u.size());
        for (std::size_t j = 0; j < cols.size(); ++j) out += u[j] * cols[j];
        return out;
    }
};

Rotation random_rotation(std::size_t p, RandomStream& g) {
    Rotation r;
    for (std::size_t j = 0; j < p; ++j) {
        Point v = sample_gaussian(g, Point(p), 1.0);
        for (const auto& c : r.cols) v -= dot(v, c) * c;
        v *= 1.0 / norm(v);
        r.cols.push_back(v);
    }
    return r;
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("shrink factor domain") {
    CHECK_NOTHROW(ShrinkFactor(0.0));
    CHECK_NOTHROW(ShrinkFactor(1.0));
    CHECK_THROWS_AS(ShrinkFactor(-0.01), DomainError);
    CHECK_THROWS_AS(ShrinkFactor(1.01), DomainError);
    CHECK_THROWS_AS(ShrinkFactor(std::nan("")), DomainError);
}

TEST_CASE("shrink") {
    const Point x{2, 0}, d0{0, 0};
    CHECK(shrink(x, d0, ShrinkFactor(0.0)) == d0);
    CHECK(shrink(x, d0, ShrinkFactor(1.0)) == x);
    CHECK(shrink(x, d0, ShrinkFactor(0.25)) == Point{0.5, 0});
    CHECK_THROWS_AS((void)shrink(x, Point{0, 0, 0}, ShrinkFactor(0.5)), DomainError);
}

TEST_CASE("js") {
    CHECK(js(Point{2, 0, 0}, Point(3), 1.0) == Point{1.5, 0, 0});
    CHECK(js(Point{0.5, 0, 0}, Point(3), 1.0) == Point{-1.5, 0, 0});
    CHECK(js_factor(Point{2, 0, 0}, Point(3), 1.0) == 0.75);
    const Point far{1e8, -2e8, 3e8};
    check_close(js(far, Point(3), 1.0), far, 1e-7);
    CHECK_THROWS_WITH_AS((void)js(Point{1, 1}, Point{0, 0}, 1.0), "JS requires p >= 3", DomainError);
    CHECK_THROWS_AS((void)js(Point{1, 1, 1}, Point{1, 1, 1}, 1.0), SingularityError);
}

TEST_CASE("js_plus") {
    CHECK(js_plus(Point{0.5, 0, 0}, Point(3), 1.0) == Point{0, 0, 0});
    CHECK(js_plus(Point{2, 0, 0}, Point(3), 1.0) == Point{1.5, 0, 0});
    CHECK(js_plus(Point{1, 2, 3}, Point{1, 2, 3}, 1.0) == Point{1, 2, 3});
    CHECK_THROWS_AS((void)js_plus(Point{1, 1}, Point{0, 0}, 1.0), DomainError);
}

TEST_CASE("oracle gamma") {
    CHECK(oracle_gamma(Point{2, 0}, Point{0, 0}, Point{1, 0}).value() == 0.5);
    CHECK(oracle_gamma(Point{2, 0}, Point{0, 0}, Point{0, 0}).value() == 0.0);
    CHECK(oracle_gamma(Point{2, 0}, Point{0, 0}, Point{2, 0}).value() == 1.0);
    CHECK_THROWS_AS((void)oracle_gamma(Point{1, 0}, Point{1, 0}, Point{2, 0}), SingularityError);
}

TEST_CASE("apply dispatch") {
    const Point x{3, 1, 2}, d0{1, 1, 1};
    CHECK(apply(IdentityEstimator{}, x, d0, 1.0) == x);
    CHECK(apply(FixedGammaEstimator{ShrinkFactor(0.0)}, x, d0, 1.0) == d0);
    CHECK(apply(JamesSteinEstimator{}, x, d0, 1.0) == js(x, d0, 1.0));
    CHECK(apply(JamesSteinPlusEstimator{}, x, d0, 1.0) == js_plus(x, d0, 1.0));
    CHECK(estimator_name(JamesSteinPlusEstimator{}) == "JamesSteinPlus");
    CHECK(estimator_name(FixedGammaEstimator{ShrinkFactor(0.25)}) == "FixedGamma(0.25)");
}

TEST_CASE("translation and rotation equivariance, contraction") {
    RandomStream g = derive_stream(2024, 1);
    const std::vector<EstimatorKind> kinds{IdentityEstimator{}, FixedGammaEstimator{ShrinkFactor(0.3)},
                                           JamesSteinEstimator{}, JamesSteinPlusEstimator{}};
    for (int i = 0; i < 300; ++i) {
        const std::size_t p = 3 + g.next_u64() % 8;
        const double sigma = std::exp(g.uniform() - 0.5);
        const Point d0 = sample_gaussian(g, Point(p), 2.0);
        const Point x = sample_gaussian(g, d0, sigma * std::sqrt(static_cast<double>(p)) * 2.0 * g.uniform());
        const Point c = sample_gaussian(g, Point(p), 5.0);
        for (const auto& k : kinds) {
            check_close(apply(k, x + c, d0 + c, sigma), apply(k, x, d0, sigma) + c, 1e-10);
        }
        const Rotation q = random_rotation(p, g);
        const Point u = x - d0;
        check_close(js_plus(d0 + q(u), d0, sigma), d0 + q(js_plus(d0 + u, d0, sigma) - d0), 1e-10);
        CHECK(norm(js_plus(x, d0, sigma) - d0) <= norm(x - d0));
    }
}

TEST_CASE("oracle gamma minimises the shrinkage loss") {
    RandomStream g = derive_stream(2024, 2);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t p = 1 + g.next_u64() % 10;
        const Point x = sample_gaussian(g, Point(p), 1.0);
        const Point d0 = sample_gaussian(g, Point(p), 1.0);
        const Point d = sample_gaussian(g, Point(p), 1.0);
        const double best = shrink_loss(x, d0, d, oracle_gamma(x, d0, d).value());
        for (int k = 0; k < 100; ++k) {
            const double gamma = k / 99.0;
            REQUIRE(best <= shrink_loss(x, d0, d, gamma) + 1e-12);
        }
    }
}

}
