#pragma once

#include <cstdint>

#include "steinfx/core.hpp"

namespace steinfx {

/// Truncation control for series evaluations.
struct SeriesControl {
    double abs_tol = 1e-12;
    std::uint64_t max_terms = 1'000'000;

    void validate() const;
};

/// Pitman-closeness query for JS vs X: dimension and noncentrality
/// eta = ||delta - delta0||^2 / (4 sigma^2).
struct PCQuery {
    int p = 3;
    double eta = 0.0;

    static PCQuery from_distance(int p, double distance, double sigma);
    void validate() const;
};

/// Regularised lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
[[nodiscard]] double reg_inc_gamma_lower(double s, double x);
/// Regularised upper incomplete gamma Q(s, x) = 1 - P(s, x), computed without cancellation.
[[nodiscard]] double reg_inc_gamma_upper(double s, double x);

[[nodiscard]] double chi2_cdf(double x, int p);
[[nodiscard]] double chi2_sf(double x, int p);

/// Pr[chi2_p(eta) >= x] where chi2_p(eta) is the law of ||Z + mu||^2 with
/// ||mu||^2 = eta: a Poisson(eta / 2) mixture of central chi-square tails.
/// Throws ConvergenceError if ctl.max_terms is exhausted first.
[[nodiscard]] double noncentral_chi2_sf(double x, int p, double eta, const SeriesControl& ctl = {});

/// Exact probability that the JS estimator is strictly closer to delta than X:
/// Pr[chi2_p(eta) >= eta + (p - 2) / 2].
[[nodiscard]] double pc_exact_js(const PCQuery& q, const SeriesControl& ctl = {});

/// Regularised incomplete beta I_x(a, b).
[[nodiscard]] double reg_inc_beta(double a, double b, double x);
/// 1 - I_x(a, b), evaluated as I_{1-x}(b, a) so small tails keep their digits.
[[nodiscard]] double reg_inc_beta_complement(double a, double b, double x);

/// Uniform measure on the unit sphere in R^p of the cap {z : z_1 >= t}.
/// Total in t: 1/2 at t = 0, 0 for t >= 1, and 1 - cap_measure(-t, p) for t < 0.
[[nodiscard]] double cap_measure(double t, int p);

/// Standard normal CDF.
[[nodiscard]] double normal_cdf(double z) noexcept;

}  // namespace steinfx
