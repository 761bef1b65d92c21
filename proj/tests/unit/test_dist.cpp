#include <doctest.h>

#include <cmath>
#include <numbers>

#include "steinfx/checks/oracles.hpp"
#include "steinfx/dist.hpp"
#include "steinfx/rng.hpp"

using namespace steinfx;

TEST_SUITE("dist") {

TEST_CASE("regularised incomplete gamma") {
    CHECK(reg_inc_gamma_lower(2.0, 0.0) == 0.0);
    CHECK(reg_inc_gamma_lower(1.0, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::fabs(reg_inc_gamma_lower(1.5, 0.25) - oracle::reg_inc_gamma_lower_quadrature(1.5, 0.25)) < 1e-10);
    CHECK(std::fabs(reg_inc_gamma_lower(1.5, 0.25) - 0.08110858834532418) < 1e-12);
    CHECK(std::fabs(reg_inc_gamma_lower(7.3, 2.1) - 0.003931757276574523) < 1e-12);
    CHECK(std::fabs(reg_inc_gamma_upper(30.0, 45.0) - 0.007337199297796568) < 1e-12);
    CHECK_THROWS_AS((void)reg_inc_gamma_lower(0.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)reg_inc_gamma_lower(1.0, -1.0), DomainError);
}

TEST_CASE("incomplete gamma is monotone and matches quadrature on a grid") {
    for (double s : {0.5, 1.0, 2.5, 10.0, 40.0}) {
        double prev = 0.0;
        for (double x = 0.0; x <= 80.0; x += 0.5) {
            const double v = reg_inc_gamma_lower(s, x);
            CHECK(v >= prev - 1e-15);
            CHECK(std::fabs(v + reg_inc_gamma_upper(s, x) - 1.0) < 1e-13);
            if (x > 0.0) CHECK(std::fabs(v - oracle::reg_inc_gamma_lower_quadrature(s, x)) < 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("central chi-square") {
    CHECK(chi2_cdf(2.0 * std::log(2.0), 2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::fabs(chi2_cdf(1.0, 1) - (2.0 * normal_cdf(1.0) - 1.0)) < 1e-12);
    CHECK(std::fabs(chi2_cdf(1.0, 1) - 0.6826894921370859) < 1e-12);
    CHECK(chi2_cdf(0.0, 4) == 0.0);
    CHECK(chi2_sf(0.0, 4) == 1.0);
    CHECK_THROWS_AS((void)chi2_cdf(1.0, 0), DomainError);
}

TEST_CASE("noncentral chi-square survival function") {
    CHECK(noncentral_chi2_sf(0.0, 5, 3.0) == 1.0);
    for (int p : {1, 2, 3, 10}) {
        for (double x : {0.3, 1.0, 4.0, 12.0}) CHECK(std::fabs(noncentral_chi2_sf(x, p, 0.0) - chi2_sf(x, p)) < 1e-12);
    }
    // reference values, independent implementation
    CHECK(std::fabs(noncentral_chi2_sf(8.0, 10, 4.0) - 0.8501680331148769) < 1e-11);
    CHECK(std::fabs(noncentral_chi2_sf(30.0, 4, 9.5) - 0.02106714231956853) < 1e-11);
    CHECK(std::fabs(noncentral_chi2_sf(0.5, 1, 2.0) - 0.7771973656688678) < 1e-11);
    CHECK(std::fabs(noncentral_chi2_sf(1500.0, 1000, 400.0) - 0.05010175170005424) < 1e-10);
    CHECK(std::fabs((1.0 - noncentral_chi2_sf(8.0, 10, 100.0)) - 7.677483509552291e-16) < 1e-12);
}

TEST_CASE("noncentral chi-square agrees with quadrature over a grid") {
    for (int p : {2, 3, 5, 10, 30}) {
        for (double eta : {0.0, 0.5, 3.0, 20.0, 90.0}) {
            for (double x : {0.5, 2.0, 8.0, 25.0, 120.0}) {
                CHECK(std::fabs(noncentral_chi2_sf(x, p, eta) - oracle::noncentral_chi2_sf_quadrature(x, p, eta)) <
                      1e-10);
            }
        }
    }
}

TEST_CASE("noncentral chi-square monotonicity") {
    // slack is the series tolerance
    const double tol = 2 * SeriesControl{}.abs_tol;
    for (int p : {3, 8}) {
        for (double eta : {0.0, 2.0, 15.0}) {
            double prev = 1.0;
            for (double x = 0.0; x < 80.0; x += 0.7) {
                const double v = noncentral_chi2_sf(x, p, eta);
                CHECK(v <= prev + tol);
                prev = v;
            }
        }
        for (double x : {1.0, 6.0, 20.0}) {
            double prev = 0.0;
            for (double eta = 0.0; eta < 60.0; eta += 0.9) {
                const double v = noncentral_chi2_sf(x, p, eta);
                CHECK(v >= prev - tol);
                prev = v;
            }
        }
    }
}

TEST_CASE("noncentral chi-square by simulation") {
    RandomStream g = derive_stream(31, 0);
    const int p = 4;
    const double eta = 3.0, x = 7.5;
    const double shift = std::sqrt(eta);
    const int n = 2'000'000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const auto a = g.normal_pair();
        const auto b = g.normal_pair();
        const double q = (a[0] + shift) * (a[0] + shift) + a[1] * a[1] + b[0] * b[0] + b[1] * b[1];
        hits += q >= x ? 1 : 0;
    }
    const double exact = noncentral_chi2_sf(x, p, eta);
    const double se = std::sqrt(exact * (1.0 - exact) / n);
    CHECK(std::fabs(hits / static_cast<double>(n) - exact) < 4.0 * se);
}

TEST_CASE("series control") {
    CHECK_THROWS_AS((void)noncentral_chi2_sf(1000.0, 5, 900.0, SeriesControl{1e-12, 3}), ConvergenceError);
    CHECK_THROWS_AS((void)noncentral_chi2_sf(1.0, 5, 1.0, SeriesControl{0.0, 100}), DomainError);
    CHECK_THROWS_AS((void)noncentral_chi2_sf(-1.0, 5, 1.0), DomainError);
    CHECK_THROWS_AS((void)noncentral_chi2_sf(1.0, 0, 1.0), DomainError);
    CHECK_THROWS_AS((void)noncentral_chi2_sf(1.0, 5, -1.0), DomainError);
}

TEST_CASE("exact PC of JS") {
    CHECK(std::fabs(pc_exact_js(PCQuery{3, 0.0}) - 0.9188914116546758) < 1e-12);
    CHECK(std::fabs(pc_exact_js(PCQuery{10, 0.0}) - 0.9473469826562889) < 1e-12);
    CHECK(std::fabs(pc_exact_js(PCQuery{3, 0.25}) - 0.875464527623195) < 1e-11);
    CHECK(std::fabs(pc_exact_js(PCQuery{5, 6.25}) - 0.687680587051104) < 1e-11);
    CHECK(std::fabs(pc_exact_js(PCQuery{20, 25.0}) - 0.8225874862705272) < 1e-11);
    CHECK(std::fabs(pc_exact_js(PCQuery{10, 100.0}) - 0.5980266527944577) < 1e-11);
    CHECK(std::fabs(pc_exact_js(PCQuery{50, 3.0}) - 0.9984899641220254) < 1e-11);
    CHECK(pc_exact_js(PCQuery{200, 1.0}) > 0.999);

    const PCQuery q = PCQuery::from_distance(10, 4.0, 2.0);
    CHECK(q.eta == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)pc_exact_js(PCQuery{2, 1.0}), DomainError);
    CHECK_THROWS_AS((void)pc_exact_js(PCQuery{3, -1.0}), DomainError);
    CHECK_THROWS_AS((void)PCQuery::from_distance(3, 1.0, 0.0), DomainError);
}

TEST_CASE("regularised incomplete beta") {
    CHECK(reg_inc_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(reg_inc_beta(2.0, 3.0, 1.0) == 1.0);
    CHECK(reg_inc_beta(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    for (double x : {0.1, 0.37, 0.8}) CHECK(reg_inc_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-14));
    for (double x : {0.1, 0.5, 0.9}) CHECK(std::fabs(reg_inc_beta(0.5, 1.0, x) - std::sqrt(x)) < 1e-13);
    CHECK(std::fabs(reg_inc_beta(2.5, 4.5, 0.3) - 0.40653901668245934) < 1e-12);
    CHECK(std::fabs(reg_inc_beta(0.5, 24.5, 0.09) - 0.9675522213832518) < 1e-12);
    CHECK(std::fabs(reg_inc_beta(2.5, 4.5, 0.3) + reg_inc_beta_complement(2.5, 4.5, 0.3) - 1.0) < 1e-14);
    CHECK_THROWS_AS((void)reg_inc_beta(0.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS((void)reg_inc_beta(1.0, 1.0, 1.5), DomainError);
}

TEST_CASE("spherical cap measure") {
    CHECK(cap_measure(0.0, 5) == 0.5);
    CHECK(cap_measure(1.0, 5) == 0.0);
    CHECK(cap_measure(1.5, 5) == 0.0);
    CHECK(std::fabs(cap_measure(0.5, 2) - 1.0 / 3.0) < 1e-14);
    CHECK(std::fabs(cap_measure(0.5, 3) - 0.25) < 1e-14);  // p = 3: (1 - t) / 2
    CHECK(std::fabs(cap_measure(0.3, 10) - 0.1850415611410339) < 1e-13);
    CHECK(std::fabs(cap_measure(0.6, 50) - 1.6323409764690727e-06) < 1e-17);
    CHECK(std::fabs(cap_measure(-0.3, 10) - (1.0 - cap_measure(0.3, 10))) < 1e-15);
    CHECK(cap_measure(-1.0, 4) == 1.0);
    CHECK_THROWS_AS((void)cap_measure(0.5, 1), DomainError);
    for (double t = -1.0; t <= 1.0; t += 0.01) {
        CHECK(std::fabs(cap_measure(t, 2) - oracle::circle_cap_closed_form(t)) < 1e-10);
    }
}

TEST_CASE("cap measure is decreasing in t and in p") {
    for (int p : {2, 3, 7, 30}) {
        double prev = 0.5;
        for (double t = 0.02; t < 1.0; t += 0.02) {
            const double v = cap_measure(t, p);
            CHECK(v < prev);
            prev = v;
        }
    }
    for (double t : {0.05, 0.4, 0.9}) {
        double prev = 1.0;
        for (int p = 2; p <= 60; ++p) {
            const double v = cap_measure(t, p);
            CHECK(v < prev);
            prev = v;
        }
    }
}

}
