#include "steinfx/checks/oracles.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace steinfx::oracle {

double noncentral_chi2_sf_quadrature(double x, int p, double eta) {
    if (p < 2 || x < 0.0 || eta < 0.0) {
        throw std::invalid_argument("noncentral_chi2_sf_quadrature: need p >= 2, x >= 0, eta >= 0");
    }
    if (x == 0.0) return 1.0;
    const double shift = std::sqrt(eta);
    const double root = std::sqrt(x);
    // Outside [lo, hi] the remaining chi2_{p-1} term exceeds a negative
    // threshold with probability 1, leaving only the normal tails.
    const double lo = -shift - root;
    const double hi = -shift + root;
    const boost::math::normal_distribution<double> std_normal;
    const double tails = boost::math::cdf(std_normal, lo) + boost::math::cdf(boost::math::complement(std_normal, hi));

    const double half_rest = 0.5 * (p - 1);
    auto integrand = [&](double z) {
        const double s = z + shift;
        const double remaining = x - s * s;
        const double density = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
        if (remaining <= 0.0) return density;
        return density * boost::math::gamma_q(half_rest, 0.5 * remaining);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double middle = integrator.integrate(integrand, lo, hi, 1e-14);
    return tails + middle;
}

double pc_exact_js_quadrature(int p, double eta) {
    return noncentral_chi2_sf_quadrature(eta + 0.5 * (p - 2), p, eta);
}

double reg_inc_gamma_lower_quadrature(double s, double x) {
    if (!(s > 0.0) || x < 0.0) {
        throw std::invalid_argument("reg_inc_gamma_lower_quadrature: need s > 0, x >= 0");
    }
    if (x == 0.0) return 0.0;
    const double log_norm = std::lgamma(s);
    auto density = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((s - 1.0) * std::log(t) - t - log_norm);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(density, 0.0, x, 1e-14);
}

double circle_cap_closed_form(double t) {
    if (t >= 1.0) return 0.0;
    if (t <= -1.0) return 1.0;
    return std::acos(t) / std::numbers::pi;
}

}  // namespace steinfx::oracle
