#include "steinfx/estimators.hpp"

#include <algorithm>
#include <cstdio>

namespace steinfx {

namespace {

void require_js_dim(std::size_t p) {
    if (p < 3) {
        throw DomainError("JS requires p >= 3");
    }
}

void require_positive_sigma(double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("sigma must be > 0");
    }
}

}  // namespace

ShrinkFactor::ShrinkFactor(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw DomainError("ShrinkFactor: gamma must lie in [0, 1]");
    }
}

std::string estimator_name(const EstimatorKind& kind) {
    struct Visitor {
        std::string operator()(const IdentityEstimator&) const { return "Identity"; }
        std::string operator()(const FixedGammaEstimator& e) const {
            char buf[64];
            std::snprintf(buf, sizeof buf, "FixedGamma(%.6g)", e.gamma.value());
            return buf;
        }
        std::string operator()(const JamesSteinEstimator&) const { return "JamesStein"; }
        std::string operator()(const JamesSteinPlusEstimator&) const { return "JamesSteinPlus"; }
    };
    return std::visit(Visitor{}, kind);
}

Point shrink(const Point& x, const Point& delta0, ShrinkFactor gamma) {
    require_same_dim(x, delta0, "shrink");
    const double g = gamma.value();
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = g * (x[i] - delta0[i]) + delta0[i];
    return out;
}

double js_factor(const Point& x, const Point& delta0, double sigma) {
    require_same_dim(x, delta0, "js");
    require_js_dim(x.size());
    require_positive_sigma(sigma);
    const double r2 = squared_distance(x, delta0);
    if (r2 == 0.0) {
        throw SingularityError("js: x equals delta0, factor is singular");
    }
    return 1.0 - sigma * sigma * static_cast<double>(x.size() - 2) / r2;
}

namespace {

Point scale_about(const Point& x, const Point& delta0, double factor) {
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = factor * (x[i] - delta0[i]) + delta0[i];
    return out;
}

}  // namespace

Point js(const Point& x, const Point& delta0, double sigma) {
    return scale_about(x, delta0, js_factor(x, delta0, sigma));
}

Point js_plus(const Point& x, const Point& delta0, double sigma) {
    require_same_dim(x, delta0, "js_plus");
    require_js_dim(x.size());
    require_positive_sigma(sigma);
    const double r2 = squared_distance(x, delta0);
    const double threshold = sigma * sigma * static_cast<double>(x.size() - 2);
    if (r2 <= threshold) {
        return delta0;
    }
    return scale_about(x, delta0, 1.0 - threshold / r2);
}

ShrinkFactor oracle_gamma(const Point& x, const Point& delta0, const Point& delta) {
    require_same_dim(x, delta0, "oracle_gamma");
    require_same_dim(x, delta, "oracle_gamma");
    const Point u = x - delta0;
    const double denom = squared_norm(u);
    if (denom == 0.0) {
        throw SingularityError("oracle_gamma: x equals delta0");
    }
    const double g = dot(u, delta - delta0) / denom;
    return ShrinkFactor(std::clamp(g, 0.0, 1.0));
}

double shrink_loss(const Point& x, const Point& delta0, const Point& delta, double gamma) {
    require_same_dim(x, delta0, "shrink_loss");
    require_same_dim(x, delta, "shrink_loss");
    CompensatedSum s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = gamma * (x[i] - delta0[i]) + delta0[i] - delta[i];
        s.add(d * d);
    }
    return s.value();
}

Point apply(const EstimatorKind& kind, const Point& x, const Point& delta0, double sigma) {
    struct Visitor {
        const Point& x;
        const Point& delta0;
        double sigma;
        Point operator()(const IdentityEstimator&) const {
            require_same_dim(x, delta0, "apply");
            return x;
        }
        Point operator()(const FixedGammaEstimator& e) const { return shrink(x, delta0, e.gamma); }
        Point operator()(const JamesSteinEstimator&) const { return js(x, delta0, sigma); }
        Point operator()(const JamesSteinPlusEstimator&) const { return js_plus(x, delta0, sigma); }
    };
    return std::visit(Visitor{x, delta0, sigma}, kind);
}

}  // namespace steinfx
