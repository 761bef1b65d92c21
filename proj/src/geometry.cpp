#include "steinfx/geometry.hpp"

#include "steinfx/estimators.hpp"

namespace steinfx {

namespace {

void require_three(const Point& a, const Point& b, const Point& c, const char* where) {
    require_same_dim(a, b, where);
    require_same_dim(a, c, where);
}

double truncation_radius_sq(std::size_t p, double sigma) {
    if (p < 3) {
        throw DomainError("JS requires p >= 3");
    }
    if (!(sigma > 0.0)) {
        throw DomainError("sigma must be > 0");
    }
    return sigma * sigma * static_cast<double>(p - 2);
}

// (a - b)'(a - c) with compensated accumulation.
double cross(const Point& a, const Point& b, const Point& c) {
    CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add((a[i] - b[i]) * (a[i] - c[i]));
    return s.value();
}

}  // namespace

bool overestimates_distance(const Point& x, const Point& delta, const Point& delta0) {
    require_three(x, delta, delta0, "overestimates_distance");
    return squared_distance(x, delta0) > squared_distance(delta, delta0);
}

double h_prime_at_one(const Point& x, const Point& delta, const Point& delta0) {
    require_three(x, delta, delta0, "h_prime_at_one");
    return 2.0 * cross(x, delta0, delta);
}

double h_prime_at_one_midpoint(const Point& x, const Point& delta, const Point& delta0) {
    require_three(x, delta, delta0, "h_prime_at_one_midpoint");
    const Point mid = 0.5 * (delta0 + delta);
    return 2.0 * (squared_distance(x, mid) - squared_distance(delta, mid));
}

bool shrinkage_can_help(const Point& x, const Point& delta, const Point& delta0) {
    return h_prime_at_one(x, delta, delta0) > 0.0;
}

bool outside_midpoint_ball(const Point& x, const Point& delta, const Point& delta0) {
    require_three(x, delta, delta0, "outside_midpoint_ball");
    const Point mid = 0.5 * (delta0 + delta);
    return squared_distance(x, mid) > 0.25 * squared_distance(delta, delta0);
}

bool target_can_help(const Point& delta0, const Point& x, const Point& delta) {
    require_three(x, delta, delta0, "target_can_help");
    return cross(x, delta0, delta) > 0.0;
}

bool js_plus_improves(const Point& x, const Point& delta, const Point& delta0, double sigma) {
    require_three(x, delta, delta0, "js_plus_improves");
    const Point est = js_plus(x, delta0, sigma);
    return squared_distance(est, delta) < squared_distance(x, delta);
}

RegionLabel classify_target(const Point& delta0, const Point& x, const Point& delta, double sigma) {
    require_three(x, delta, delta0, "classify_target");
    const double c = truncation_radius_sq(x.size(), sigma);
    const double xd2 = squared_distance(x, delta);
    if (xd2 == 0.0) {
        throw DomainError("K requires X != delta");
    }
    RegionLabel label;
    label.inside_truncation_ball = squared_distance(delta0, x) < c;
    label.in_ball_B = squared_distance(delta0, delta) < xd2;
    // unit(x - delta)'(x - delta0) > c / (2 ||x - delta||), multiplied through by 2 ||x - delta||.
    label.in_halfspace_K = 2.0 * cross(x, delta, delta0) > c;
    label.improves = label.inside_truncation_ball ? label.in_ball_B : label.in_halfspace_K;
    return label;
}

AppCMembership appc_membership(const Point& x, const Point& delta, const Point& delta0, double sigma) {
    require_three(x, delta, delta0, "appc_membership");
    const double c = truncation_radius_sq(x.size(), sigma);
    const double xd2 = squared_distance(x, delta);
    AppCMembership m;
    m.in_C = squared_distance(js_plus(x, delta0, sigma), delta) < xd2;
    m.in_D = squared_distance(js(x, delta0, sigma), delta) < xd2;
    m.in_trunc_B1 = squared_distance(x, delta0) < c;
    m.in_dom_B2 = xd2 < squared_distance(delta0, delta);
    return m;
}

}  // namespace steinfx
