#include <doctest.h>

#include <cmath>

#include "steinfx/dist.hpp"
#include "steinfx/montecarlo.hpp"

using namespace steinfx;

namespace {

ScenarioSpec fixed(std::size_t p, double sigma, Point delta0) {
    ScenarioSpec s;
    s.sigma = sigma;
    s.delta = Point(p);
    s.target_rule = FixedTarget{std::move(delta0)};
    return s;
}

ScenarioSpec centred(std::size_t p, double sigma, double tau) {
    ScenarioSpec s;
    s.sigma = sigma;
    s.delta = Point(p);
    s.target_rule = DataCenteredTarget{tau};
    return s;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("scenario validation") {
    ScenarioSpec s = fixed(3, 1.0, Point(4));
    CHECK_THROWS_AS(s.validate(), DomainError);
    CHECK_THROWS_AS(centred(3, -1.0, 1.0).validate(), DomainError);
    CHECK_THROWS_AS(centred(3, 1.0, 0.0).validate(), DomainError);
    CHECK_THROWS_AS((void)estimate_event_prob(centred(3, 1.0, 1.0), EventKind::B1c, 0, SeedSpec{}), DomainError);
    CHECK(parse_event_kind("pc_js") == EventKind::PC_JS);
    CHECK_THROWS_AS((void)parse_event_kind("nope"), DomainError);
}

TEST_CASE("PC of JS matches the exact value") {
    const std::uint64_t n = 1'000'000;
    const MCResult r = estimate_event_prob(fixed(3, 1.0, Point(3)), EventKind::PC_JS, n, SeedSpec{1, 0});
    const double exact = pc_exact_js(PCQuery{3, 0.0});
    CHECK(std::fabs(r.estimate - exact) < 4.0 * std::sqrt(exact * (1 - exact) / n));
}

TEST_CASE("B1c with delta = delta0 is certain") {
    const MCResult r = estimate_event_prob(fixed(5, 2.0, Point(5)), EventKind::B1c, 20000, SeedSpec{1, 1});
    CHECK(r.estimate == 1.0);
}

TEST_CASE("reverse harm under a data-centred target") {
    const MCResult r = estimate_event_prob(centred(10, 1.0, 1.0), EventKind::ReverseHarm, 1'000'000, SeedSpec{1, 2});
    CHECK(r.estimate - 0.5 > 4.0 * r.std_error);
}

TEST_CASE("MSE anchors") {
    const std::uint64_t n = 1'000'000;
    const MCResult id = estimate_mse(centred(3, 2.0, 1.0), IdentityEstimator{}, n, SeedSpec{2, 0});
    CHECK(std::fabs(id.estimate - 12.0) < 4.0 * id.std_error);
    const MCResult js = estimate_mse(fixed(10, 1.0, Point(10)), JamesSteinEstimator{}, n, SeedSpec{2, 1});
    CHECK(std::fabs(js.estimate - 2.0) < 4.0 * js.std_error);
    const MCResult harm = estimate_mse(centred(10, 1.0, 1.0), JamesSteinPlusEstimator{}, n, SeedSpec{2, 2});
    CHECK(harm.estimate - 10.0 > 4.0 * harm.std_error);
}

TEST_CASE("common random numbers and contrasts") {
    Point d0(5);
    d0[0] = 2.0;
    const std::vector<Metric> metrics{EstimatorKind{JamesSteinPlusEstimator{}}, EstimatorKind{JamesSteinEstimator{}},
                                      EstimatorKind{IdentityEstimator{}}};
    const ScenarioRun run = run_scenario(fixed(5, 1.0, d0), metrics, {{1, 0}, {2, 1}}, 1'000'000, SeedSpec{3, 0});
    REQUIRE(run.metrics.size() == 3);
    REQUIRE(run.contrasts.size() == 2);
    CHECK(run.contrasts[0].estimate == doctest::Approx(run.metrics[1].estimate - run.metrics[0].estimate));
    CHECK(run.contrasts[0].estimate > 4.0 * run.contrasts[0].std_error);
    CHECK(run.contrasts[1].estimate > 4.0 * run.contrasts[1].std_error);
    // each metric on its own reproduces the paired run
    CHECK(estimate_mse(fixed(5, 1.0, d0), JamesSteinEstimator{}, 1'000'000, SeedSpec{3, 0}).estimate ==
          run.metrics[1].estimate);
    CHECK(metric_name(metrics[0]) == "MSE_JamesSteinPlus");
    CHECK_THROWS_AS((void)run_scenario(fixed(5, 1.0, d0), metrics, {{0, 3}}, 10, SeedSpec{}), DomainError);
}

TEST_CASE("results do not depend on the worker count") {
    const ScenarioSpec s = centred(6, 1.5, 0.7);
    const std::vector<Metric> metrics{EventKind::ReverseHarm, EventKind::PC_JSplus, EstimatorKind{JamesSteinPlusEstimator{}}};
    const ScenarioRun a = run_scenario(s, metrics, {{0, 1}}, 100'003, SeedSpec{4, 4}, 1);
    const ScenarioRun b = run_scenario(s, metrics, {{0, 1}}, 100'003, SeedSpec{4, 4}, 2);
    const ScenarioRun c = run_scenario(s, metrics, {{0, 1}}, 100'003, SeedSpec{4, 4}, 8);
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        CHECK(a.metrics[i].estimate == b.metrics[i].estimate);
        CHECK(a.metrics[i].estimate == c.metrics[i].estimate);
        CHECK(a.metrics[i].std_error == c.metrics[i].std_error);
    }
    CHECK(a.contrasts[0].estimate == c.contrasts[0].estimate);
}

TEST_CASE("conditional harm with X held fixed") {
    const Point x{1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    const MCResult r = estimate_conditional_harm(x, Point(10), 1.0, 1.0, 200000, SeedSpec{5, 0});
    CHECK(r.estimate > 0.5);
}

TEST_CASE("conditional mean residual") {
    const Point x{1, 2, 3};
    const ResidualResult r = conditional_mean_residual(x, 2.0, 1.0, 1'000'000, SeedSpec{6, 0});
    CHECK(r.n == 1'000'000);
    CHECK(r.residual < r.clt_bound);
    const ResidualResult tiny = conditional_mean_residual(x, 1e-9, 1.0, 10000, SeedSpec{6, 1});
    CHECK(tiny.residual < 1e-8);
    CHECK(antithetic_pair_residual(x, 1.0, 1.0, 100000, SeedSpec{6, 2}) == 0.0);
}

TEST_CASE("sweeps") {
    const SweepSchedule schedule;
    const auto rows = sweep_dimension(SweepKind::Prop2, {4, 16, 64}, schedule, 50000, SeedSpec{7, 0});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].p == 4);
    const SweepVerdict v = assess_sweep(rows, 0.99);
    CHECK(v.monotone);
    CHECK(rows.back().estimate > 0.99);
    CHECK_THROWS_AS((void)sweep_dimension(SweepKind::Prop2, {8, 4}, schedule, 100, SeedSpec{}), DomainError);
    CHECK_THROWS_AS((void)sweep_dimension(SweepKind::Prop2, {4, 8}, schedule, 0, SeedSpec{}), DomainError);
    CHECK_THROWS_AS((void)sweep_dimension(SweepKind::Prop3, {2, 8}, schedule, 100, SeedSpec{}), DomainError);
    CHECK(default_sweep_threshold(SweepKind::Prop2) == 0.99);
    CHECK(default_sweep_threshold(SweepKind::Prop3) == 0.95);
    CHECK(parse_sweep_kind("prop3") == SweepKind::Prop3);

    // cap-measure integration agrees with the direct estimate
    const auto direct = sweep_dimension(SweepKind::Prop3, {8}, schedule, 400000, SeedSpec{7, 1});
    const MCResult rb = sweep_cap_crosscheck(SweepKind::Prop3, 8, schedule, 400000, SeedSpec{7, 2});
    CHECK(std::fabs(rb.estimate - direct[0].estimate) < 4.0 * std::hypot(rb.std_error, direct[0].std_error));
}

TEST_CASE("assess_sweep") {
    std::vector<SweepRow> rows{{4, 0.5, 0.01, 100}, {8, 0.49, 0.01, 100}, {16, 0.96, 0.01, 100}};
    SweepVerdict v = assess_sweep(rows, 0.95);
    CHECK(v.monotone);
    CHECK(v.threshold_met);
    rows[1].estimate = 0.3;
    v = assess_sweep(rows, 0.97);
    CHECK_FALSE(v.monotone);
    CHECK_FALSE(v.threshold_met);
}

}
