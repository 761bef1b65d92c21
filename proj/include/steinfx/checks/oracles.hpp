#pragma once

// Independent reference computations. Nothing here calls into the dist
// module; central chi-square tails come from Boost.Math and integrals from
// Boost quadrature, so agreement is a genuine two-route check.

namespace steinfx::oracle {

/// Pr[chi2_p(eta) >= x] by conditioning on the first coordinate of Z + mu:
/// integral of phi(z) * Pr[chi2_{p-1} >= x - (z + sqrt(eta))^2] dz.
/// Requires p >= 2.
[[nodiscard]] double noncentral_chi2_sf_quadrature(double x, int p, double eta);

/// Pr[chi2_p(eta) >= eta + (p - 2) / 2] through the quadrature above.
[[nodiscard]] double pc_exact_js_quadrature(int p, double eta);

/// P(s, x) as the integral of the gamma density over [0, x].
[[nodiscard]] double reg_inc_gamma_lower_quadrature(double s, double x);

/// Pr[z_1 >= t] for z uniform on the circle (p = 2): arccos(t) / pi.
[[nodiscard]] double circle_cap_closed_form(double t);

}  // namespace steinfx::oracle
