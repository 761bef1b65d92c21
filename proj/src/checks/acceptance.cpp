#include "steinfx/checks/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "steinfx/checks/oracles.hpp"
#include "steinfx/dist.hpp"
#include "steinfx/estimators.hpp"
#include "steinfx/geometry.hpp"
#include "steinfx/montecarlo.hpp"
#include "steinfx/parallel.hpp"
#include "steinfx/symmetry.hpp"

namespace steinfx::checks {

namespace {

constexpr std::uint64_t kDraws = 1'000'000;
constexpr double kZ = 4.0;

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

const char* verdict(bool ok) { return ok ? "ok" : "FAIL"; }

SeedSpec seed_for(const AcceptanceConfig& cfg, int criterion, std::uint64_t sub) {
    return SeedSpec{cfg.master_seed, child_stream_id(static_cast<std::uint64_t>(criterion) << 32, sub)};
}

Point along_axis(std::size_t p, double distance) {
    Point v(p);
    v[0] = distance;
    return v;
}

ScenarioSpec fixed_scenario(std::size_t p, double sigma, double distance) {
    ScenarioSpec spec;
    spec.sigma = sigma;
    spec.delta = Point(p);
    spec.target_rule = FixedTarget{along_axis(p, distance)};
    return spec;
}

// --- C1 -------------------------------------------------------------------
CriterionResult exact_pc_identity(const AcceptanceConfig& cfg) {
    CriterionResult r{1, "Exact PC identity: Monte Carlo and quadrature vs pc_exact_js", true, {}};
    std::uint64_t cell = 0;
    for (int p : {3, 5, 10, 20}) {
        for (double d : {0.0, 1.0, 2.0, 5.0, 10.0}) {
            const double exact = pc_exact_js(PCQuery::from_distance(p, d, 1.0));
            const double quad = oracle::pc_exact_js_quadrature(p, d * d / 4.0);
            const MCResult mc = estimate_event_prob(fixed_scenario(static_cast<std::size_t>(p), 1.0, d),
                                                    EventKind::PC_JS, kDraws, seed_for(cfg, 1, cell++), cfg.workers);
            const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(kDraws));
            const bool mc_ok = std::fabs(mc.estimate - exact) <= kZ * se;
            const bool quad_ok = std::fabs(quad - exact) <= 1e-8;
            r.pass = r.pass && mc_ok && quad_ok;
            r.details.push_back(fmt("p=%-2d dist=%-4g exact=%.10f quad_err=%.2e [%s] mc=%.6f se=%.2e z=%+.2f [%s]", p, d,
                                    exact, std::fabs(quad - exact), verdict(quad_ok), mc.estimate, se,
                                    (mc.estimate - exact) / se, verdict(mc_ok)));
        }
    }
    return r;
}

// --- C2 -------------------------------------------------------------------
CriterionResult pc_exceeds_half(const AcceptanceConfig&) {
    CriterionResult r{2, "PC of JS exceeds 1/2 on the grid and approaches 1 for large p", true, {}};
    double worst = 1.0;
    int worst_p = 0, worst_eta = 0;
    int below = 0;
    for (int p = 3; p <= 50; ++p) {
        for (int eta = 0; eta <= 100; ++eta) {
            const double v = pc_exact_js(PCQuery{p, static_cast<double>(eta)});
            if (!(v > 0.5)) ++below;
            if (v < worst) {
                worst = v;
                worst_p = p;
                worst_eta = eta;
            }
        }
    }
    const double large = pc_exact_js(PCQuery{200, 1.0});
    r.pass = below == 0 && large > 0.999;
    r.details.push_back(fmt("grid p=3..50 x eta=0..100: %d values <= 0.5, minimum %.10f at p=%d eta=%d [%s]", below,
                            worst, worst_p, worst_eta, verdict(below == 0)));
    r.details.push_back(fmt("p=200 eta=1: %.12f > 0.999 [%s]", large, verdict(large > 0.999)));
    return r;
}

// --- C3 -------------------------------------------------------------------
CriterionResult mse_chain(const AcceptanceConfig& cfg) {
    CriterionResult r{3, "MSE chain MSE(JS+) < MSE(JS) < p sigma^2 with common random numbers", true, {}};
    std::uint64_t cell = 0;
    for (double d : {0.0, 2.0, 10.0}) {
        const ScenarioSpec spec = fixed_scenario(10, 1.0, d);
        const std::vector<Metric> metrics{EstimatorKind{JamesSteinPlusEstimator{}}, EstimatorKind{JamesSteinEstimator{}}};
        const ScenarioRun run = run_scenario(spec, metrics, {{1, 0}}, kDraws, seed_for(cfg, 3, cell++), cfg.workers);
        const MCResult& plus = run.metrics[0];
        const MCResult& plain = run.metrics[1];
        const MCResult& gap = run.contrasts[0];  // MSE(JS) - MSE(JS+), paired
        const bool first = gap.estimate > kZ * gap.std_error;
        const bool second = 10.0 - plain.estimate > kZ * plain.std_error;
        r.pass = r.pass && first && second;
        r.details.push_back(fmt("dist=%-4g MSE(JS+)=%.6f MSE(JS)=%.6f | JS-JS+ gap=%.3e se=%.3e [%s] | 10-MSE(JS)=%.6f "
                                "se=%.3e [%s]",
                                d, plus.estimate, plain.estimate, gap.estimate, gap.std_error, verdict(first),
                                10.0 - plain.estimate, plain.std_error, verdict(second)));
    }
    return r;
}

// --- C4 -------------------------------------------------------------------
CriterionResult js_mse_at_target(const AcceptanceConfig& cfg) {
    CriterionResult r{4, "MSE(JS) = 2 sigma^2 when delta = delta0", true, {}};
    std::uint64_t cell = 0;
    for (int p : {5, 10, 20}) {
        for (double sigma : {1.0, 2400.0}) {
            const MCResult mse = estimate_mse(fixed_scenario(static_cast<std::size_t>(p), sigma, 0.0),
                                              JamesSteinEstimator{}, kDraws, seed_for(cfg, 4, cell++), cfg.workers);
            const double target = 2.0 * sigma * sigma;
            const double z = (mse.estimate - target) / mse.std_error;
            const bool ok = std::fabs(z) <= kZ;
            r.pass = r.pass && ok;
            r.details.push_back(fmt("p=%-2d sigma=%-4g MSE(JS)/sigma^2=%.6f se/sigma^2=%.2e z=%+.2f [%s]", p, sigma,
                                    mse.estimate / (sigma * sigma), mse.std_error / (sigma * sigma), z, verdict(ok)));
        }
    }
    return r;
}

// --- C5 -------------------------------------------------------------------
CriterionResult reverse_stein_contrast(const AcceptanceConfig& cfg) {
    CriterionResult r{5, "Independent target lowers MSE(JS+), data-centred target raises it", true, {}};
    const std::size_t p = 10;
    ScenarioSpec independent;
    independent.delta = Point(p);
    independent.target_rule = IndependentPriorTarget{Point(p), 1.0};
    ScenarioSpec centred;
    centred.delta = Point(p);
    centred.target_rule = DataCenteredTarget{1.0};

    const MCResult a = estimate_mse(independent, JamesSteinPlusEstimator{}, kDraws, seed_for(cfg, 5, 0), cfg.workers);
    const MCResult b = estimate_mse(centred, JamesSteinPlusEstimator{}, kDraws, seed_for(cfg, 5, 1), cfg.workers);
    const bool a_ok = 10.0 - a.estimate > kZ * a.std_error;
    const bool b_ok = b.estimate - 10.0 > kZ * b.std_error;
    r.pass = a_ok && b_ok;
    r.details.push_back(fmt("IndependentPrior(psi=delta, tau=1): MSE(JS+)=%.6f se=%.2e, below 10 by %.1f SE [%s]",
                            a.estimate, a.std_error, (10.0 - a.estimate) / a.std_error, verdict(a_ok)));
    r.details.push_back(fmt("DataCentered(tau=1):             MSE(JS+)=%.6f se=%.2e, above 10 by %.1f SE [%s]",
                            b.estimate, b.std_error, (b.estimate - 10.0) / b.std_error, verdict(b_ok)));
    return r;
}

// --- C6 -------------------------------------------------------------------
CriterionResult reverse_harm(const AcceptanceConfig& cfg) {
    CriterionResult r{6, "Data-centred target: harm probability > 1/2 and -> 1 with p", true, {}};
    ScenarioSpec centred;
    centred.delta = Point(10);
    centred.target_rule = DataCenteredTarget{1.0};
    const MCResult harm = estimate_event_prob(centred, EventKind::ReverseHarm, kDraws, seed_for(cfg, 6, 0), cfg.workers);
    const bool half_ok = harm.estimate - 0.5 > kZ * harm.std_error;
    r.details.push_back(fmt("p=10 harm=%.6f se=%.2e, above 1/2 by %.1f SE [%s]", harm.estimate, harm.std_error,
                            (harm.estimate - 0.5) / harm.std_error, verdict(half_ok)));

    const SweepSchedule schedule;
    const auto rows = sweep_dimension(SweepKind::Prop3, {4, 8, 16, 32, 64}, schedule, kDraws, seed_for(cfg, 6, 1),
                                      cfg.workers);
    const SweepVerdict v = assess_sweep(rows, 0.95, kZ);
    for (const auto& row : rows) r.details.push_back(fmt("sweep p=%-3d harm=%.6f se=%.2e", row.p, row.estimate, row.std_error));
    r.details.push_back(fmt("sweep nondecreasing within 4 joint SE [%s]; p=64 harm >= 0.95 [%s]", verdict(v.monotone),
                            verdict(v.threshold_met)));

    const MCResult cap = sweep_cap_crosscheck(SweepKind::Prop3, 64, schedule, kDraws, seed_for(cfg, 6, 2), cfg.workers);
    const double joint = std::hypot(cap.std_error, rows.back().std_error);
    const bool cap_ok = std::fabs(cap.estimate - rows.back().estimate) <= kZ * joint && cap.estimate >= 0.95;
    r.details.push_back(fmt("cap-measure cross-check p=64: %.6f se=%.2e, |diff|=%.2e <= 4 joint SE and >= 0.95 [%s]",
                            cap.estimate, cap.std_error, std::fabs(cap.estimate - rows.back().estimate),
                            verdict(cap_ok)));
    r.pass = half_ok && v.monotone && v.threshold_met && cap_ok;
    return r;
}

// --- C7 -------------------------------------------------------------------
CriterionResult conditional_mean(const AcceptanceConfig& cfg) {
    CriterionResult r{7, "E[js_plus(X; delta0) | X] = X for delta0 symmetric about X", true, {}};
    const Point x{1.0, 2.0, 3.0};
    std::uint64_t cell = 0;
    for (double tau : {0.5, 1.0, 2.0}) {
        const double anti = antithetic_pair_residual(x, tau, 1.0, 100'000, seed_for(cfg, 7, cell++));
        const ResidualResult plain = conditional_mean_residual(x, tau, 1.0, kDraws, seed_for(cfg, 7, cell++), cfg.workers);
        const bool anti_ok = anti == 0.0;
        const bool plain_ok = plain.residual < plain.clt_bound;
        r.pass = r.pass && anti_ok && plain_ok;
        r.details.push_back(fmt("tau/sigma=%-3g antithetic max residual=%.1e [%s] | plain residual=%.3e bound=%.3e [%s]", tau,
                                anti, verdict(anti_ok), plain.residual, plain.clt_bound, verdict(plain_ok)));
    }
    return r;
}

// --- C8 -------------------------------------------------------------------
CriterionResult prop2_limit(const AcceptanceConfig& cfg) {
    CriterionResult r{8, "Pr[X in B1c] -> 1 for an independent random target (psi = delta, tau = sigma)", true, {}};
    const SweepSchedule schedule;
    const std::vector<int> dims{4, 8, 16, 32, 64, 128, 256};
    const std::uint64_t n = 250'000;
    const auto rows = sweep_dimension(SweepKind::Prop2, dims, schedule, n, seed_for(cfg, 8, 0), cfg.workers);
    const SweepVerdict v = assess_sweep(rows, 0.99, kZ);
    for (const auto& row : rows) r.details.push_back(fmt("sweep p=%-3d Pr[B1c]=%.6f se=%.2e", row.p, row.estimate, row.std_error));
    r.details.push_back(fmt("nondecreasing within 4 joint SE [%s]; p=256 >= 0.99 [%s]", verdict(v.monotone),
                            verdict(v.threshold_met)));
    const MCResult cap = sweep_cap_crosscheck(SweepKind::Prop2, 4, schedule, n, seed_for(cfg, 8, 1), cfg.workers);
    const double joint = std::hypot(cap.std_error, rows.front().std_error);
    const bool cap_ok = std::fabs(cap.estimate - rows.front().estimate) <= kZ * joint;
    r.details.push_back(fmt("cap-measure cross-check p=4: %.6f se=%.2e vs direct %.6f [%s]", cap.estimate, cap.std_error,
                            rows.front().estimate, verdict(cap_ok)));
    r.pass = v.monotone && v.threshold_met && cap_ok;
    return r;
}

// --- C9 -------------------------------------------------------------------
struct Triple {
    Point x, delta, delta0;
    double sigma;
};

double log_uniform(RandomStream& g, double lo, double hi) { return std::exp(lo + (hi - lo) * g.uniform()); }

Triple random_triple(RandomStream& g, std::size_t min_p, std::size_t max_p) {
    const std::size_t p = min_p + static_cast<std::size_t>(g.next_u64() % (max_p - min_p + 1));
    Triple t;
    t.sigma = log_uniform(g, -1.0, 1.0);
    t.delta = sample_gaussian(g, Point(p), t.sigma * log_uniform(g, -1.5, 1.5));
    t.x = sample_gaussian(g, t.delta, t.sigma * log_uniform(g, -1.5, 1.5));
    const double spread = t.sigma * std::sqrt(std::max<double>(1.0, static_cast<double>(p) - 2.0) / static_cast<double>(p));
    t.delta0 = sample_gaussian(g, t.x, spread * log_uniform(g, -1.5, 1.5));
    return t;
}

CriterionResult geometry_oracles(const AcceptanceConfig& cfg) {
    CriterionResult r{9, "Geometry predicates agree with direct evaluation", true, {}};

    // classify_target vs js_plus_improves.
    {
        struct Tally {
            std::uint64_t disagreements = 0, banded = 0, union_mismatch = 0;
        };
        const SeedSpec seed = seed_for(cfg, 9, 0);
        const auto parts = run_chunked<Tally>(kDraws, cfg.workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
            RandomStream g = derive_stream(seed, c);
            Tally t;
            for (std::uint64_t i = 0; i < m; ++i) {
                const Triple tr = random_triple(g, 3, 12);
                const RegionLabel label = classify_target(tr.delta0, tr.x, tr.delta, tr.sigma);
                const double lx = squared_distance(tr.x, tr.delta);
                const double le = squared_distance(js_plus(tr.x, tr.delta0, tr.sigma), tr.delta);
                const double scale = lx + squared_distance(tr.delta0, tr.delta) +
                                     tr.sigma * tr.sigma * static_cast<double>(tr.x.size());
                if ((label.in_ball_B || label.in_halfspace_K) != label.improves) ++t.union_mismatch;
                if (std::fabs(lx - le) < 1e-9 * scale) {
                    ++t.banded;
                    continue;
                }
                if (label.improves != (le < lx)) ++t.disagreements;
            }
            return t;
        });
        Tally total;
        for (const auto& t : parts) {
            total.disagreements += t.disagreements;
            total.banded += t.banded;
            total.union_mismatch += t.union_mismatch;
        }
        const bool ok = total.disagreements == 0;
        r.pass = r.pass && ok;
        r.details.push_back(fmt("classify_target vs js_plus_improves: %llu tuples, %llu off-band disagreements, %llu in "
                                "band [%s]",
                                static_cast<unsigned long long>(kDraws),
                                static_cast<unsigned long long>(total.disagreements),
                                static_cast<unsigned long long>(total.banded), verdict(ok)));
        r.details.push_back(fmt("piecewise region vs B union K: %llu mismatches (informational)",
                                static_cast<unsigned long long>(total.union_mismatch)));
    }

    // region identities on 1e5 random tuples
    {
        RandomStream g = derive_stream(seed_for(cfg, 9, 1));
        std::uint64_t eq51 = 0, eq50_in_b1 = 0, eq50_global = 0, b2_total = 0;
        const std::uint64_t n = 100'000;
        for (std::uint64_t i = 0; i < n; ++i) {
            const Triple t = random_triple(g, 3, 12);
            const AppCMembership m = appc_membership(t.x, t.delta, t.delta0, t.sigma);
            if ((m.in_C && m.in_trunc_B1) != (m.in_trunc_B1 && !m.in_dom_B2)) ++eq51;
            if (m.in_dom_B2) {
                ++b2_total;
                const bool worse = squared_distance(js(t.x, t.delta0, t.sigma), t.delta) > squared_distance(t.x, t.delta);
                if (!worse) {
                    ++eq50_global;
                    if (m.in_trunc_B1) ++eq50_in_b1;
                }
            }
        }
        const bool ok = eq51 == 0 && eq50_in_b1 == 0;
        r.pass = r.pass && ok;
        r.details.push_back(fmt("C n B1 = B1 \\ B2: %llu violations; X in B1 n B2 => JS strictly worse: %llu violations "
                                "[%s]",
                                static_cast<unsigned long long>(eq51), static_cast<unsigned long long>(eq50_in_b1),
                                verdict(ok)));
        r.details.push_back(fmt("X in B2 outside B1 with JS not worse: %llu of %llu B2 tuples (informational)",
                                static_cast<unsigned long long>(eq50_global), static_cast<unsigned long long>(b2_total)));
    }

    // B1c subset of B2c.
    {
        const SeedSpec seed = seed_for(cfg, 9, 2);
        const auto parts =
            run_chunked<std::uint64_t>(kDraws, cfg.workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
                RandomStream g = derive_stream(seed, c);
                std::uint64_t bad = 0;
                for (std::uint64_t i = 0; i < m; ++i) {
                    const Triple t = random_triple(g, 1, 12);
                    if (overestimates_distance(t.x, t.delta, t.delta0) && !shrinkage_can_help(t.x, t.delta, t.delta0)) ++bad;
                }
                return bad;
            });
        std::uint64_t bad = 0;
        for (auto b : parts) bad += b;
        r.pass = r.pass && bad == 0;
        r.details.push_back(fmt("B1c => B2c on %llu triples: %llu violations [%s]", static_cast<unsigned long long>(kDraws),
                                static_cast<unsigned long long>(bad), verdict(bad == 0)));
    }

    // h'(1) vs centred finite difference.
    {
        RandomStream g = derive_stream(seed_for(cfg, 9, 3));
        double worst = 0.0;
        const double step = 1e-5;
        for (int i = 0; i < 10'000; ++i) {
            const Triple t = random_triple(g, 1, 12);
            const double analytic = h_prime_at_one(t.x, t.delta, t.delta0);
            const double fd = (shrink_loss(t.x, t.delta0, t.delta, 1.0 + step) -
                               shrink_loss(t.x, t.delta0, t.delta, 1.0 - step)) /
                              (2.0 * step);
            const double scale = 2.0 * std::sqrt(squared_distance(t.x, t.delta0) * squared_distance(t.x, t.delta));
            if (scale > 0.0) worst = std::max(worst, std::fabs(fd - analytic) / scale);
        }
        const bool ok = worst <= 1e-6;
        r.pass = r.pass && ok;
        r.details.push_back(fmt("h'(1) vs finite difference: worst relative error %.2e <= 1e-6 [%s]", worst, verdict(ok)));
    }
    return r;
}

// --- C10 ------------------------------------------------------------------
CriterionResult cap_measure_check(const AcceptanceConfig& cfg) {
    CriterionResult r{10, "Spherical-cap measure vs uniform-sphere sampling and the circle closed form", true, {}};
    const std::vector<double> ts{0.1, 0.3, 0.6};
    std::uint64_t cell = 0;
    for (int p : {2, 3, 10, 50}) {
        const SeedSpec seed = seed_for(cfg, 10, cell++);
        const auto parts = run_chunked<std::vector<std::uint64_t>>(
            kDraws, cfg.workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
                RandomStream g = derive_stream(seed, c);
                std::vector<std::uint64_t> hits(ts.size(), 0);
                for (std::uint64_t i = 0; i < m; ++i) {
                    const Point z = uniform_sphere(static_cast<std::size_t>(p), g);
                    for (std::size_t k = 0; k < ts.size(); ++k) hits[k] += z[0] >= ts[k] ? 1 : 0;
                }
                return hits;
            });
        for (std::size_t k = 0; k < ts.size(); ++k) {
            std::uint64_t hits = 0;
            for (const auto& part : parts) hits += part[k];
            const double exact = cap_measure(ts[k], p);
            const double est = static_cast<double>(hits) / static_cast<double>(kDraws);
            const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(kDraws));
            const bool ok = std::fabs(est - exact) <= kZ * se;
            r.pass = r.pass && ok;
            r.details.push_back(fmt("p=%-2d t=%.1f cap=%.8f empirical=%.8f se=%.2e [%s]", p, ts[k], exact, est, se,
                                    verdict(ok)));
        }
    }
    double worst = 0.0;
    for (int i = -100; i <= 100; ++i) {
        const double t = i / 100.0;
        worst = std::max(worst, std::fabs(cap_measure(t, 2) - oracle::circle_cap_closed_form(t)));
    }
    const bool ok = worst <= 1e-10;
    r.pass = r.pass && ok;
    r.details.push_back(fmt("p=2 vs arccos(t)/pi on t in [-1, 1]: worst error %.2e <= 1e-10 [%s]", worst, verdict(ok)));
    return r;
}

// --- C11 ------------------------------------------------------------------
CriterionResult symmetry_battery(const AcceptanceConfig& cfg) {
    CriterionResult r{11, "Directional symmetry battery (32 central halfspaces, 8 cones)", true, {}};
    const std::size_t p = 3;
    const SymmetryBattery directional =
        run_symmetry_battery(SymmetrySampler::directional_only(p), 32, 8, kDraws, seed_for(cfg, 11, 0), 1e-3, cfg.workers);
    double worst = 0.0;
    for (const auto& row : directional.rows) worst = std::max(worst, std::fabs(row.z));
    const bool dir_ok = directional.all_pass();
    r.details.push_back(fmt("DirectionalOnly: %d/40 tests fail at level 1e-3 (|z| crit %.3f, max |z| %.2f) [%s]",
                            directional.failures(), directional.critical_z, worst, verdict(dir_ok)));

    const SymmetryBattery control = run_symmetry_battery(SymmetrySampler::asymmetric_control(p), 32, 8, kDraws,
                                                         seed_for(cfg, 11, 1), 1e-3, cfg.workers);
    double max_z = 0.0;
    for (const auto& row : control.rows) max_z = std::max(max_z, std::fabs(row.z));
    const bool control_ok = max_z > 10.0;
    r.details.push_back(fmt("AsymmetricControl: %d/40 tests fail, max |z| %.1f > 10 [%s]", control.failures(), max_z,
                            verdict(control_ok)));

    const DirectionFit fit =
        direction_goodness_of_fit(SymmetrySampler::directional_only(p), kDraws, seed_for(cfg, 11, 2), 1e-3, cfg.workers);
    const bool fit_ok = fit.uniform_ok && fit.radius_two_on_positive_side == 0;
    r.details.push_back(fmt("DirectionalOnly orthant chi2=%.3f (df %d, crit %.3f); ||Y||=2 given y1>0: %llu of %llu [%s]",
                            fit.chi2_stat, fit.df, fit.critical,
                            static_cast<unsigned long long>(fit.radius_two_on_positive_side),
                            static_cast<unsigned long long>(fit.positive_side), verdict(fit_ok)));
    r.pass = dir_ok && control_ok && fit_ok;
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
    return {exact_pc_identity(cfg), pc_exceeds_half(cfg),   mse_chain(cfg),        js_mse_at_target(cfg),
            reverse_stein_contrast(cfg), reverse_harm(cfg),  conditional_mean(cfg), prop2_limit(cfg),
            geometry_oracles(cfg),  cap_measure_check(cfg), symmetry_battery(cfg)};
}

std::string format_report(const std::vector<CriterionResult>& results) {
    std::string out;
    for (const auto& r : results) {
        out += fmt("[%s] C%02d %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str());
        for (const auto& d : r.details) out += "       " + d + "\n";
    }
    return out;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

}  // namespace steinfx::checks
