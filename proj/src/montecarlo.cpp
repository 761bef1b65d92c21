#include "steinfx/montecarlo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include "steinfx/dist.hpp"
#include "steinfx/geometry.hpp"
#include "steinfx/parallel.hpp"

namespace steinfx {

namespace {

std::string normalise(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c != '-' && c != '_' && c != ' ') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

void require_n(std::uint64_t n, const char* where) {
    if (n < 1) {
        throw DomainError(std::string(where) + ": n must be >= 1");
    }
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

void ScenarioSpec::validate() const {
    require_positive(sigma, "ScenarioSpec: sigma");
    if (delta.size() == 0) {
        throw DomainError("ScenarioSpec: delta must have dimension >= 1");
    }
    if (!delta.all_finite()) {
        throw DomainError("ScenarioSpec: delta has non-finite coordinates");
    }
    struct Visitor {
        const Point& delta;
        void operator()(const FixedTarget& t) const {
            require_same_dim(delta, t.delta0, "ScenarioSpec fixed delta0");
            if (!t.delta0.all_finite()) throw DomainError("ScenarioSpec: delta0 has non-finite coordinates");
        }
        void operator()(const IndependentPriorTarget& t) const {
            require_same_dim(delta, t.psi, "ScenarioSpec psi");
            if (!t.psi.all_finite()) throw DomainError("ScenarioSpec: psi has non-finite coordinates");
            require_positive(t.tau, "ScenarioSpec: tau");
        }
        void operator()(const DataCenteredTarget& t) const { require_positive(t.tau, "ScenarioSpec: tau"); }
    };
    std::visit(Visitor{delta}, target_rule);
}

std::string event_name(EventKind e) {
    switch (e) {
        case EventKind::B1c: return "B1c";
        case EventKind::B2c: return "B2c";
        case EventKind::PC_JS: return "PC_JS";
        case EventKind::PC_JSplus: return "PC_JSplus";
        case EventKind::ReverseHarm: return "ReverseHarm";
    }
    return "?";
}

EventKind parse_event_kind(const std::string& name) {
    const std::string key = normalise(name);
    for (auto e : {EventKind::B1c, EventKind::B2c, EventKind::PC_JS, EventKind::PC_JSplus, EventKind::ReverseHarm}) {
        if (normalise(event_name(e)) == key) return e;
    }
    throw DomainError("unknown event kind '" + name + "'");
}

std::string metric_name(const Metric& m) {
    if (const auto* e = std::get_if<EventKind>(&m)) return event_name(*e);
    return "MSE_" + estimator_name(std::get<EstimatorKind>(m));
}

namespace {

bool needs_js(const std::vector<Metric>& metrics) {
    return std::any_of(metrics.begin(), metrics.end(), [](const Metric& m) {
        if (const auto* e = std::get_if<EventKind>(&m)) return *e == EventKind::PC_JS;
        return std::holds_alternative<JamesSteinEstimator>(std::get<EstimatorKind>(m));
    });
}

bool needs_js_plus(const std::vector<Metric>& metrics) {
    return std::any_of(metrics.begin(), metrics.end(), [](const Metric& m) {
        if (const auto* e = std::get_if<EventKind>(&m)) return *e == EventKind::PC_JSplus || *e == EventKind::ReverseHarm;
        return std::holds_alternative<JamesSteinPlusEstimator>(std::get<EstimatorKind>(m));
    });
}

void require_js_ok(const ScenarioSpec& spec, const std::vector<Metric>& metrics) {
    if ((needs_js(metrics) || needs_js_plus(metrics)) && spec.dim() < 3) {
        throw DomainError("JS requires p >= 3");
    }
}

// Draws the target for one replicate into d0 given x.
void draw_target(const TargetRule& rule, const Point& x, RandomStream& g, Point& d0) {
    if (const auto* f = std::get_if<FixedTarget>(&rule)) {
        d0 = f->delta0;
    } else if (const auto* ip = std::get_if<IndependentPriorTarget>(&rule)) {
        g.fill_normal(d0.coords());
        for (std::size_t i = 0; i < d0.size(); ++i) d0[i] = ip->psi[i] + ip->tau * d0[i];
    } else {
        const auto& dc = std::get<DataCenteredTarget>(rule);
        g.fill_normal(d0.coords());
        for (std::size_t i = 0; i < d0.size(); ++i) d0[i] = x[i] + dc.tau * d0[i];
    }
}

}  // namespace

ScenarioRun run_scenario(const ScenarioSpec& spec, const std::vector<Metric>& metrics,
                         const std::vector<std::pair<std::size_t, std::size_t>>& contrasts, std::uint64_t n,
                         const SeedSpec& seed, unsigned workers) {
    spec.validate();
    require_n(n, "run_scenario");
    if (metrics.empty()) {
        throw DomainError("run_scenario: no metrics requested");
    }
    for (const auto& [a, b] : contrasts) {
        if (a >= metrics.size() || b >= metrics.size()) {
            throw DomainError("run_scenario: contrast index out of range");
        }
    }
    require_js_ok(spec, metrics);
    const bool want_js = needs_js(metrics);
    const bool want_js_plus = needs_js_plus(metrics);
    const std::size_t p = spec.dim();

    struct Partial {
        std::vector<MomentSums> metric_sums;
        std::vector<MomentSums> contrast_sums;
    };

    const auto parts = run_chunked<Partial>(n, workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
        RandomStream g = derive_stream(seed, c);
        Partial part;
        part.metric_sums.resize(metrics.size());
        part.contrast_sums.resize(contrasts.size());
        Point x(p);
        Point d0(p);
        std::vector<double> values(metrics.size());
        for (std::uint64_t i = 0; i < m; ++i) {
            g.fill_normal(x.coords());
            for (std::size_t k = 0; k < p; ++k) x[k] = spec.delta[k] + spec.sigma * x[k];
            draw_target(spec.target_rule, x, g, d0);

            const double loss_x = squared_distance(x, spec.delta);
            std::optional<double> loss_js;
            std::optional<double> loss_js_plus;
            if (want_js) loss_js = squared_distance(js(x, d0, spec.sigma), spec.delta);
            if (want_js_plus) loss_js_plus = squared_distance(js_plus(x, d0, spec.sigma), spec.delta);

            for (std::size_t k = 0; k < metrics.size(); ++k) {
                double v = 0.0;
                if (const auto* e = std::get_if<EventKind>(&metrics[k])) {
                    switch (*e) {
                        case EventKind::B1c: v = overestimates_distance(x, spec.delta, d0); break;
                        case EventKind::B2c: v = shrinkage_can_help(x, spec.delta, d0); break;
                        case EventKind::PC_JS: v = *loss_js < loss_x; break;
                        case EventKind::PC_JSplus: v = *loss_js_plus < loss_x; break;
                        case EventKind::ReverseHarm: v = *loss_js_plus > loss_x; break;
                    }
                } else {
                    const auto& kind = std::get<EstimatorKind>(metrics[k]);
                    if (std::holds_alternative<IdentityEstimator>(kind)) {
                        v = loss_x;
                    } else if (std::holds_alternative<JamesSteinEstimator>(kind)) {
                        v = *loss_js;
                    } else if (std::holds_alternative<JamesSteinPlusEstimator>(kind)) {
                        v = *loss_js_plus;
                    } else {
                        v = squared_distance(apply(kind, x, d0, spec.sigma), spec.delta);
                    }
                }
                values[k] = v;
                part.metric_sums[k].add(v);
            }
            for (std::size_t k = 0; k < contrasts.size(); ++k) {
                part.contrast_sums[k].add(values[contrasts[k].first] - values[contrasts[k].second]);
            }
        }
        return part;
    });

    std::vector<MomentSums> metric_total(metrics.size());
    std::vector<MomentSums> contrast_total(contrasts.size());
    for (const auto& part : parts) {
        for (std::size_t k = 0; k < metrics.size(); ++k) metric_total[k].merge(part.metric_sums[k]);
        for (std::size_t k = 0; k < contrasts.size(); ++k) contrast_total[k].merge(part.contrast_sums[k]);
    }
    ScenarioRun run;
    for (std::size_t k = 0; k < metrics.size(); ++k) {
        if (std::holds_alternative<EventKind>(metrics[k])) {
            const auto hits = static_cast<std::uint64_t>(std::llround(metric_total[k].sum.value()));
            run.metrics.push_back(MCResult::proportion(hits, n));
        } else {
            run.metrics.push_back(metric_total[k].result());
        }
    }
    for (const auto& s : contrast_total) run.contrasts.push_back(s.result());
    return run;
}

MCResult estimate_event_prob(const ScenarioSpec& spec, EventKind event, std::uint64_t n, const SeedSpec& seed,
                             unsigned workers) {
    return run_scenario(spec, {Metric{event}}, {}, n, seed, workers).metrics.front();
}

MCResult estimate_mse(const ScenarioSpec& spec, const EstimatorKind& kind, std::uint64_t n, const SeedSpec& seed,
                      unsigned workers) {
    return run_scenario(spec, {Metric{kind}}, {}, n, seed, workers).metrics.front();
}

MCResult estimate_conditional_harm(const Point& x, const Point& delta, double sigma, double tau, std::uint64_t n,
                                   const SeedSpec& seed, unsigned workers) {
    require_same_dim(x, delta, "estimate_conditional_harm");
    if (x.size() < 3) throw DomainError("JS requires p >= 3");
    require_positive(sigma, "estimate_conditional_harm: sigma");
    require_positive(tau, "estimate_conditional_harm: tau");
    require_n(n, "estimate_conditional_harm");
    const double loss_x = squared_distance(x, delta);
    const auto counts = run_chunked<std::uint64_t>(n, workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
        RandomStream g = derive_stream(seed, c);
        std::uint64_t harm = 0;
        for (std::uint64_t i = 0; i < m; ++i) {
            const Point d0 = sample_gaussian(g, x, tau);
            harm += squared_distance(js_plus(x, d0, sigma), delta) > loss_x ? 1 : 0;
        }
        return harm;
    });
    std::uint64_t total = 0;
    for (auto v : counts) total += v;
    return MCResult::proportion(total, n);
}

ResidualResult conditional_mean_residual(const Point& x, double tau, double sigma, std::uint64_t n,
                                         const SeedSpec& seed, unsigned workers) {
    if (x.size() < 3) throw DomainError("JS requires p >= 3");
    require_positive(tau, "conditional_mean_residual: tau");
    require_positive(sigma, "conditional_mean_residual: sigma");
    require_n(n, "conditional_mean_residual");
    const std::size_t p = x.size();
    // Accumulate offsets js_plus - x so the residual is not swamped by |x|.
    const auto parts =
        run_chunked<std::vector<MomentSums>>(n, workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
            RandomStream g = derive_stream(seed, c);
            std::vector<MomentSums> sums(p);
            for (std::uint64_t i = 0; i < m; ++i) {
                const Point d0 = sample_gaussian(g, x, tau);
                const Point est = js_plus(x, d0, sigma);
                for (std::size_t k = 0; k < p; ++k) sums[k].add(est[k] - x[k]);
            }
            return sums;
        });
    std::vector<MomentSums> total(p);
    for (const auto& part : parts) {
        for (std::size_t k = 0; k < p; ++k) total[k].merge(part[k]);
    }
    CompensatedSum resid_sq;
    CompensatedSum se_sq;
    for (const auto& s : total) {
        const MCResult r = s.result();
        resid_sq.add(r.estimate * r.estimate);
        se_sq.add(r.std_error * r.std_error);
    }
    return ResidualResult{std::sqrt(resid_sq.value()), 4.0 * std::sqrt(se_sq.value()), n};
}

double antithetic_pair_residual(const Point& x, double tau, double sigma, std::uint64_t pairs, const SeedSpec& seed) {
    if (x.size() < 3) throw DomainError("JS requires p >= 3");
    require_positive(tau, "antithetic_pair_residual: tau");
    require_positive(sigma, "antithetic_pair_residual: sigma");
    require_n(pairs, "antithetic_pair_residual");
    const std::size_t p = x.size();
    const double c = sigma * sigma * static_cast<double>(p - 2);
    RandomStream g = derive_stream(seed);
    Point v(p);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < pairs; ++i) {
        g.fill_normal(v.coords());
        v *= tau;
        // With delta0 = x + V, js_plus - x = min(1, c / ||V||^2) V. The factor
        // depends on V only through ||V||^2, which is bit-identical for -V.
        auto offset = [&](const Point& w) {
            const double r2 = squared_norm(w);
            return std::min(1.0, c / r2) * w;
        };
        const Point plus = offset(v);
        const Point minus = offset(-v);
        for (std::size_t k = 0; k < p; ++k) worst = std::max(worst, std::fabs(plus[k] + minus[k]));
    }
    return worst;
}

std::string sweep_name(SweepKind k) { return k == SweepKind::Prop2 ? "prop2" : "prop3"; }

SweepKind parse_sweep_kind(const std::string& name) {
    const std::string key = normalise(name);
    if (key == "prop2") return SweepKind::Prop2;
    if (key == "prop3") return SweepKind::Prop3;
    throw DomainError("unknown sweep kind '" + name + "' (expected prop2 or prop3)");
}

void SweepSchedule::validate() const {
    require_positive(sigma, "SweepSchedule: sigma");
    require_positive(tau_scale, "SweepSchedule: tau_scale");
    if (!std::isfinite(tau_exponent) || !std::isfinite(psi_exponent) || !(psi_scale >= 0.0) ||
        !std::isfinite(psi_scale)) {
        throw DomainError("SweepSchedule: exponents must be finite and psi_scale >= 0");
    }
}

ScenarioSpec SweepSchedule::scenario(SweepKind kind, int p) const {
    const double dp = static_cast<double>(p);
    const double tau = sigma * tau_scale * std::pow(dp, tau_exponent);
    ScenarioSpec spec;
    spec.sigma = sigma;
    spec.delta = Point(static_cast<std::size_t>(p));
    if (kind == SweepKind::Prop2) {
        Point psi(static_cast<std::size_t>(p));
        psi[0] = sigma * psi_scale * std::pow(dp, psi_exponent);
        spec.target_rule = IndependentPriorTarget{std::move(psi), tau};
    } else {
        spec.target_rule = DataCenteredTarget{tau};
    }
    return spec;
}

namespace {

void validate_sweep(SweepKind kind, const std::vector<int>& p_list, const SweepSchedule& schedule, std::uint64_t n) {
    schedule.validate();
    require_n(n, "sweep_dimension");
    if (p_list.empty()) {
        throw DomainError("sweep_dimension: p list is empty");
    }
    const int min_p = kind == SweepKind::Prop3 ? 3 : 1;
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        if (p_list[i] < min_p) {
            throw DomainError("sweep_dimension: " + sweep_name(kind) + " requires p >= " + std::to_string(min_p));
        }
        if (i > 0 && p_list[i] <= p_list[i - 1]) {
            throw DomainError("sweep_dimension: p list must be strictly ascending");
        }
    }
}

EventKind sweep_event(SweepKind kind) { return kind == SweepKind::Prop2 ? EventKind::B1c : EventKind::ReverseHarm; }

}  // namespace

std::vector<SweepRow> sweep_dimension(SweepKind kind, const std::vector<int>& p_list, const SweepSchedule& schedule,
                                      std::uint64_t n, const SeedSpec& seed, unsigned workers) {
    validate_sweep(kind, p_list, schedule, n);
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        const ScenarioSpec spec = schedule.scenario(kind, p_list[i]);
        const SeedSpec child{seed.master_seed, child_stream_id(seed.stream_id, i)};
        const MCResult r = estimate_event_prob(spec, sweep_event(kind), n, child, workers);
        rows.push_back(SweepRow{p_list[i], r.estimate, r.std_error, r.n});
    }
    return rows;
}

SweepVerdict assess_sweep(const std::vector<SweepRow>& rows, double threshold, double z) {
    SweepVerdict v;
    v.threshold = threshold;
    v.monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double joint = std::hypot(rows[i - 1].std_error, rows[i].std_error);
        if (rows[i].estimate < rows[i - 1].estimate - z * joint) v.monotone = false;
    }
    v.threshold_met = !rows.empty() && rows.back().estimate >= threshold;
    return v;
}

double default_sweep_threshold(SweepKind kind) { return kind == SweepKind::Prop2 ? 0.99 : 0.95; }

MCResult sweep_cap_crosscheck(SweepKind kind, int p, const SweepSchedule& schedule, std::uint64_t n,
                              const SeedSpec& seed, unsigned workers) {
    validate_sweep(kind, {p}, schedule, n);
    const ScenarioSpec spec = schedule.scenario(kind, p);
    const auto up = static_cast<std::size_t>(p);
    const double c = schedule.sigma * schedule.sigma * static_cast<double>(std::max(p - 2, 0));

    const auto parts = run_chunked<MomentSums>(n, workers, [&](std::uint32_t ch, std::uint64_t, std::uint64_t m) {
        RandomStream g = derive_stream(seed, ch);
        MomentSums sums;
        Point y(up);
        Point w(up);
        for (std::uint64_t i = 0; i < m; ++i) {
            g.fill_normal(y.coords());
            const double y_norm = spec.sigma * norm(y);
            g.fill_normal(w.coords());
            double v = 0.0;
            if (kind == SweepKind::Prop2) {
                // Pr[X in B1 | ||Y||, delta0] is the cap at t = ||Y|| / (2 ||delta0 - delta||).
                const auto& prior = std::get<IndependentPriorTarget>(spec.target_rule);
                for (std::size_t k = 0; k < up; ++k) w[k] = prior.psi[k] + prior.tau * w[k] - spec.delta[k];
                const double radius = norm(w);
                const double in_b1 = radius > 0.0 ? cap_measure(y_norm / (2.0 * radius), p) : 0.0;
                v = 1.0 - in_b1;
            } else {
                // Given ||X - delta|| and ||V||, the improvement event is one cap:
                // ball B inside the truncation ball, halfspace K outside it.
                const double tau = std::get<DataCenteredTarget>(spec.target_rule).tau;
                const double v_norm = tau * norm(w);
                const double improve = v_norm * v_norm < c ? cap_measure(v_norm / (2.0 * y_norm), p)
                                                           : cap_measure(c / (2.0 * y_norm * v_norm), p);
                v = 1.0 - improve;
            }
            sums.add(v);
        }
        return sums;
    });
    MomentSums total;
    for (const auto& part : parts) total.merge(part);
    return total.result();
}

}  // namespace steinfx
