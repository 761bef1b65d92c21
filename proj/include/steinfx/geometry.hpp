#pragma once

#include "steinfx/core.hpp"

namespace steinfx {

/// Where a shrinkage target delta0 falls relative to the plus-rule JS
/// improvement region, for fixed observation x and truth delta.
struct RegionLabel {
    bool inside_truncation_ball = false;  ///< ||delta0 - x||^2 < sigma^2 (p - 2)
    bool in_ball_B = false;               ///< ||delta0 - delta|| < ||x - delta||
    bool in_halfspace_K = false;          ///< 2 (x - delta)'(x - delta0) > sigma^2 (p - 2)
    bool improves = false;                ///< B inside the truncation ball, K outside it
};

/// Membership flags for the plus-rule vs plain JS comparison sets.
struct AppCMembership {
    bool in_C = false;         ///< ||js_plus - delta|| < ||x - delta||
    bool in_D = false;         ///< ||js - delta|| < ||x - delta||
    bool in_trunc_B1 = false;  ///< ||x - delta0|| < sigma sqrt(p - 2)
    bool in_dom_B2 = false;    ///< ||x - delta|| < ||delta0 - delta||
};

/// x lies outside the ball of radius ||delta - delta0|| centred at delta0.
[[nodiscard]] bool overestimates_distance(const Point& x, const Point& delta, const Point& delta0);

/// Derivative at gamma = 1 of h(gamma) = ||gamma (x - delta0) + delta0 - delta||^2.
[[nodiscard]] double h_prime_at_one(const Point& x, const Point& delta, const Point& delta0);

/// Same derivative via the midpoint form 2 (||x - m||^2 - ||delta - m||^2), m = (delta0 + delta) / 2.
[[nodiscard]] double h_prime_at_one_midpoint(const Point& x, const Point& delta, const Point& delta0);

/// Some gamma in [0, 1) moves x strictly closer to delta (h'(1) > 0).
[[nodiscard]] bool shrinkage_can_help(const Point& x, const Point& delta, const Point& delta0);

/// Midpoint-ball form: ||x - m|| > ||delta - delta0|| / 2.
[[nodiscard]] bool outside_midpoint_ball(const Point& x, const Point& delta, const Point& delta0);

/// The same condition read as a condition on the target: delta0 outside the
/// closed halfspace through x with inward normal x - delta.
[[nodiscard]] bool target_can_help(const Point& delta0, const Point& x, const Point& delta);

/// Direct evaluation: ||js_plus(x; delta0) - delta|| < ||x - delta||.
[[nodiscard]] bool js_plus_improves(const Point& x, const Point& delta, const Point& delta0, double sigma);

/// Piecewise ball/halfspace characterisation of the js_plus improvement
/// region, evaluated algebraically (does not call js_plus).
/// Throws DomainError for p < 3 or x == delta.
[[nodiscard]] RegionLabel classify_target(const Point& delta0, const Point& x, const Point& delta, double sigma);

/// Throws for p < 3; SingularityError when x == delta0 (JS undefined there).
[[nodiscard]] AppCMembership appc_membership(const Point& x, const Point& delta, const Point& delta0,
                                             double sigma);

}  // namespace steinfx
