#include <doctest.h>

#include <cmath>

#include "steinfx/dist.hpp"
#include "steinfx/symmetry.hpp"

using namespace steinfx;

TEST_SUITE("symmetry") {

TEST_CASE("sampler names and validation") {
    CHECK(parse_sampler_kind("directionalonly") == SamplerKind::DirectionalOnly);
    CHECK(parse_sampler_kind(sampler_name(SamplerKind::Elliptical)) == SamplerKind::Elliptical);
    CHECK_THROWS_AS((void)parse_sampler_kind("cubic"), DomainError);
    CHECK_THROWS_AS(SymmetrySampler::spherical(3, 0.0).validate(), DomainError);
    CHECK_THROWS_AS(SymmetrySampler::elliptical({1.0, -2.0}).validate(), DomainError);
}

TEST_CASE("directional-only radius is set by the first coordinate") {
    RandomStream g = derive_stream(4, 0);
    const SymmetrySampler s = SymmetrySampler::directional_only(2);
    for (int i = 0; i < 10000; ++i) {
        const Point y = sample(s, g);
        const double r = norm(y);
        REQUIRE(std::fabs(r - (y[0] > 0.0 ? 1.0 : 2.0)) < 1e-12);
    }
}

TEST_CASE("spherical gaussian mean") {
    RandomStream g = derive_stream(4, 1);
    const SymmetrySampler s = SymmetrySampler::spherical(3, 1.0);
    const int n = 1'000'000;
    Point sum(3);
    for (int i = 0; i < n; ++i) sum += sample(s, g);
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::fabs(sum[j] / n) < 4.0 / std::sqrt(n));
}

TEST_CASE("elliptical variance ratio") {
    RandomStream g = derive_stream(4, 2);
    const SymmetrySampler s = SymmetrySampler::elliptical({1.0, 2.0});
    const int n = 200000;
    double v0 = 0, v1 = 0;
    for (int i = 0; i < n; ++i) {
        const Point y = sample(s, g);
        v0 += y[0] * y[0];
        v1 += y[1] * y[1];
    }
    // ratio of two independent variance estimates; relative SE about sqrt(4 / n)
    CHECK(std::fabs(v1 / v0 - 4.0) < 4.0 * 4.0 * std::sqrt(4.0 / n));
}

TEST_CASE("uniform sphere") {
    RandomStream g = derive_stream(4, 3);
    const int n = 1'000'000;
    int upper = 0, cap = 0, two_sided = 0;
    for (int i = 0; i < n; ++i) {
        const Point z = uniform_sphere(10, g);
        if (i < 1000) REQUIRE(std::fabs(norm(z) - 1.0) < 1e-12);
        upper += z[0] >= 0.0 ? 1 : 0;
        cap += z[0] >= 0.3 ? 1 : 0;
        two_sided += std::fabs(z[0]) >= 0.3 ? 1 : 0;
    }
    auto within = [&](int hits, double exact) {
        return std::fabs(hits / static_cast<double>(n) - exact) < 4.0 * std::sqrt(exact * (1.0 - exact) / n);
    };
    CHECK(within(upper, 0.5));
    CHECK(within(cap, cap_measure(0.3, 10)));
    CHECK(within(two_sided, 2.0 * cap_measure(0.3, 10)));
}

TEST_CASE("halfspace probabilities") {
    const std::uint64_t n = 1'000'000;
    const Point e1 = Point::unit(3, 0);
    const MCResult dir = empirical_halfspace_prob(SymmetrySampler::directional_only(3), HalfspaceSpec{Point{1, 1, -1}, 0.0},
                                                  n, SeedSpec{5, 0});
    CHECK(std::fabs(dir.estimate - 0.5) < 4.0 * std::sqrt(0.25 / n));

    const MCResult ctl = empirical_halfspace_prob(SymmetrySampler::asymmetric_control(3), HalfspaceSpec{e1, 0.0}, n,
                                                  SeedSpec{5, 1});
    CHECK(ctl.estimate - 0.5 > 4.0 * ctl.std_error);
    CHECK(std::fabs(ctl.estimate - normal_cdf(1.0)) < 4.0 * ctl.std_error);

    const MCResult off = empirical_halfspace_prob(SymmetrySampler::spherical(3), HalfspaceSpec{e1, 1.0}, n, SeedSpec{5, 2});
    CHECK(std::fabs(off.estimate - (1.0 - normal_cdf(1.0))) < 4.0 * off.std_error);
    CHECK(0.5 - off.estimate > 4.0 * off.std_error);
}

TEST_CASE("cone symmetry") {
    const std::uint64_t n = 1'000'000;
    const std::vector<HalfspaceSpec> orthant3{{Point::unit(3, 0), 0.0}, {Point::unit(3, 1), 0.0}, {Point::unit(3, 2), 0.0}};
    const ConeSymmetryResult dir = empirical_cone_symmetry(SymmetrySampler::directional_only(3), orthant3, n, SeedSpec{6, 0});
    CHECK(std::fabs(dir.difference.estimate) < 4.0 * dir.difference.std_error);
    CHECK(std::fabs(dir.forward.estimate - 0.125) < 4.0 * dir.forward.std_error);

    const std::vector<HalfspaceSpec> quarter{{Point::unit(2, 0), 0.0}, {Point::unit(2, 1), 0.0}};
    const ConeSymmetryResult sph = empirical_cone_symmetry(SymmetrySampler::spherical(2), quarter, n, SeedSpec{6, 1});
    CHECK(std::fabs(sph.forward.estimate - 0.25) < 4.0 * sph.forward.std_error);
    CHECK(std::fabs(sph.reflected.estimate - 0.25) < 4.0 * sph.reflected.std_error);

    const ConeSymmetryResult ctl = empirical_cone_symmetry(SymmetrySampler::asymmetric_control(3), orthant3, n, SeedSpec{6, 2});
    CHECK(std::fabs(ctl.difference.estimate) > 4.0 * ctl.difference.std_error);
}

TEST_CASE("critical values") {
    CHECK(normal_critical_value(0.05) == doctest::Approx(1.959963984540054).epsilon(1e-9));
    CHECK(normal_critical_value(1e-3) == doctest::Approx(3.2905267314919255).epsilon(1e-9));
    CHECK(chi2_critical_value(0.05, 1) == doctest::Approx(3.841458820694124).epsilon(1e-9));
    CHECK(chi2_critical_value(1e-3, 7) == doctest::Approx(24.321886347856854).epsilon(1e-9));
}

TEST_CASE("battery separates the samplers") {
    const std::uint64_t n = 200000;
    // family-wise level 1e-3 over the 40 tests
    const double alpha = 1e-3 / 40;
    const SymmetryBattery dir =
        run_symmetry_battery(SymmetrySampler::directional_only(3), 32, 8, n, SeedSpec{8, 0}, alpha);
    CHECK(dir.rows.size() == 40);
    CHECK(dir.all_pass());
    const SymmetryBattery ell = run_symmetry_battery(SymmetrySampler::elliptical({1.0, 3.0, 0.5}), 16, 4, n, SeedSpec{8, 1}, alpha);
    CHECK(ell.all_pass());
    const SymmetryBattery ctl = run_symmetry_battery(SymmetrySampler::asymmetric_control(3), 32, 8, n, SeedSpec{8, 2}, alpha);
    CHECK(ctl.failures() > 0);
    CHECK_THROWS_AS((void)run_symmetry_battery(SymmetrySampler::spherical(3), 0, 0, n, SeedSpec{8, 3}), DomainError);
}

TEST_CASE("directional-only: uniform direction, asymmetric radius") {
    const DirectionFit fit = direction_goodness_of_fit(SymmetrySampler::directional_only(3), 1'000'000, SeedSpec{9, 0});
    CHECK(fit.uniform_ok);
    CHECK(fit.df == 7);
    CHECK(fit.radius_two_on_positive_side == 0);
    CHECK(fit.positive_side > 0);
}

TEST_CASE("rotating uniform sphere draws leaves cap fractions unchanged") {
    RandomStream g = derive_stream(4, 4);
    const int n = 400000;
    const double c = std::cos(0.7), s = std::sin(0.7);
    int plain = 0, rotated = 0;
    for (int i = 0; i < n; ++i) {
        const Point z = uniform_sphere(3, g);
        plain += z[0] >= 0.3 ? 1 : 0;
        rotated += c * z[0] - s * z[1] >= 0.3 ? 1 : 0;
    }
    const double exact = cap_measure(0.3, 3);
    const double se = std::sqrt(exact * (1.0 - exact) / n);
    CHECK(std::fabs(plain / double(n) - exact) < 4.0 * se);
    CHECK(std::fabs(rotated / double(n) - exact) < 4.0 * se);
}

}
