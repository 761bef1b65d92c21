#pragma once

#include <string>
#include <variant>

#include "steinfx/core.hpp"

namespace steinfx {

/// Shrinkage coefficient gamma in [0, 1]. gamma = 1 is the identity estimator.
class ShrinkFactor {
public:
    explicit ShrinkFactor(double gamma);
    [[nodiscard]] double value() const noexcept { return gamma_; }

private:
    double gamma_;
};

struct IdentityEstimator {};
struct FixedGammaEstimator {
    ShrinkFactor gamma;
};
struct JamesSteinEstimator {};
struct JamesSteinPlusEstimator {};

using EstimatorKind =
    std::variant<IdentityEstimator, FixedGammaEstimator, JamesSteinEstimator, JamesSteinPlusEstimator>;

[[nodiscard]] std::string estimator_name(const EstimatorKind& kind);

/// gamma * (x - delta0) + delta0.
[[nodiscard]] Point shrink(const Point& x, const Point& delta0, ShrinkFactor gamma);

/// Adaptive factor 1 - sigma^2 (p - 2) / ||x - delta0||^2 (unclamped; may be negative).
[[nodiscard]] double js_factor(const Point& x, const Point& delta0, double sigma);

/// James-Stein estimator toward delta0. Requires p >= 3 and x != delta0.
[[nodiscard]] Point js(const Point& x, const Point& delta0, double sigma);

/// Plus-rule James-Stein: the factor is clamped at zero, so inside the
/// truncation ball ||x - delta0||^2 <= sigma^2 (p - 2) the result is delta0.
[[nodiscard]] Point js_plus(const Point& x, const Point& delta0, double sigma);

/// Minimiser over [0, 1] of h(gamma) = ||shrink(x, delta0, gamma) - delta||^2.
[[nodiscard]] ShrinkFactor oracle_gamma(const Point& x, const Point& delta0, const Point& delta);

/// h(gamma) = ||gamma (x - delta0) + delta0 - delta||^2, for any real gamma.
[[nodiscard]] double shrink_loss(const Point& x, const Point& delta0, const Point& delta, double gamma);

/// Dispatch on the estimator kind. `sigma` is ignored by Identity and FixedGamma.
[[nodiscard]] Point apply(const EstimatorKind& kind, const Point& x, const Point& delta0, double sigma);

}  // namespace steinfx
