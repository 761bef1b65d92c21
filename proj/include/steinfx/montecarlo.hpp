#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "steinfx/core.hpp"
#include "steinfx/estimators.hpp"
#include "steinfx/rng.hpp"

namespace steinfx {

struct FixedTarget {
    Point delta0;
};
/// delta0 ~ N(psi, tau^2 I), independent of X.
struct IndependentPriorTarget {
    Point psi;
    double tau = 1.0;
};
/// delta0 ~ N(X, tau^2 I): the target is chosen from the data.
struct DataCenteredTarget {
    double tau = 1.0;
};

using TargetRule = std::variant<FixedTarget, IndependentPriorTarget, DataCenteredTarget>;

/// X ~ N_p(delta, sigma^2 I) together with the rule that produces delta0.
struct ScenarioSpec {
    TargetRule target_rule = FixedTarget{};
    double sigma = 1.0;
    Point delta;

    [[nodiscard]] std::size_t dim() const noexcept { return delta.size(); }
    void validate() const;
};

enum class EventKind {
    B1c,          ///< ||X - delta0|| > ||delta - delta0||
    B2c,          ///< some gamma in [0, 1) helps (h'(1) > 0)
    PC_JS,        ///< ||js - delta|| < ||X - delta||
    PC_JSplus,    ///< ||js_plus - delta|| < ||X - delta||
    ReverseHarm,  ///< ||js_plus - delta|| > ||X - delta||
};

[[nodiscard]] std::string event_name(EventKind e);
[[nodiscard]] EventKind parse_event_kind(const std::string& name);

/// One quantity evaluated per draw: an event indicator or a squared error.
using Metric = std::variant<EventKind, EstimatorKind>;

[[nodiscard]] std::string metric_name(const Metric& m);

/// Result of a common-random-numbers pass: one MCResult per metric, plus
/// paired differences metrics[a] - metrics[b] for each requested contrast.
struct ScenarioRun {
    std::vector<MCResult> metrics;
    std::vector<MCResult> contrasts;
};

/// Draw (X, delta0) n times and evaluate every metric on the same draws.
/// Deterministic in (spec, metrics, n, seed) and independent of `workers`.
[[nodiscard]] ScenarioRun run_scenario(const ScenarioSpec& spec, const std::vector<Metric>& metrics,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& contrasts,
                                       std::uint64_t n, const SeedSpec& seed, unsigned workers = 1);

[[nodiscard]] MCResult estimate_event_prob(const ScenarioSpec& spec, EventKind event, std::uint64_t n,
                                           const SeedSpec& seed, unsigned workers = 1);

[[nodiscard]] MCResult estimate_mse(const ScenarioSpec& spec, const EstimatorKind& kind, std::uint64_t n,
                                    const SeedSpec& seed, unsigned workers = 1);

/// Pr[||js_plus(x; delta0) - delta|| > ||x - delta|| | X = x] with delta0 ~ N(x, tau^2 I).
[[nodiscard]] MCResult estimate_conditional_harm(const Point& x, const Point& delta, double sigma, double tau,
                                                 std::uint64_t n, const SeedSpec& seed, unsigned workers = 1);

struct ResidualResult {
    double residual = 0.0;   ///< ||mean of js_plus(x; delta0) - x||
    double clt_bound = 0.0;  ///< 4 sqrt(sum_j se_j^2)
    std::uint64_t n = 0;
};

/// Average js_plus(x; delta0) over delta0 ~ N(x, tau^2 I) and measure its
/// distance from x, with a CLT bound from the per-coordinate standard errors.
[[nodiscard]] ResidualResult conditional_mean_residual(const Point& x, double tau, double sigma, std::uint64_t n,
                                                       const SeedSpec& seed, unsigned workers = 1);

/// Antithetic version: pairs (x + V, x - V) give offsets that cancel exactly.
/// Returns the largest absolute coordinate of any pair's summed offset.
[[nodiscard]] double antithetic_pair_residual(const Point& x, double tau, double sigma, std::uint64_t pairs,
                                              const SeedSpec& seed);

enum class SweepKind {
    Prop2,  ///< Pr[X in B1c], delta0 ~ N(psi, tau^2 I) independent of X
    Prop3,  ///< Pr[js_plus harms], delta0 ~ N(X, tau^2 I)
};

[[nodiscard]] std::string sweep_name(SweepKind k);
[[nodiscard]] SweepKind parse_sweep_kind(const std::string& name);

/// Dimension schedule: tau = sigma * tau_scale * p^tau_exponent and
/// ||psi - delta|| = sigma * psi_scale * p^psi_exponent (Prop2 only).
struct SweepSchedule {
    double sigma = 1.0;
    double tau_scale = 1.0;
    double tau_exponent = 0.0;
    double psi_scale = 0.0;
    double psi_exponent = 0.0;

    void validate() const;
    [[nodiscard]] ScenarioSpec scenario(SweepKind kind, int p) const;
};

struct SweepRow {
    int p = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

/// One estimate per dimension, each from its own child stream of `seed`.
[[nodiscard]] std::vector<SweepRow> sweep_dimension(SweepKind kind, const std::vector<int>& p_list,
                                                    const SweepSchedule& schedule, std::uint64_t n,
                                                    const SeedSpec& seed, unsigned workers = 1);

struct SweepVerdict {
    bool monotone = false;  ///< est[i+1] >= est[i] - z * sqrt(se[i]^2 + se[i+1]^2)
    bool threshold_met = false;
    double threshold = 0.0;
};

[[nodiscard]] SweepVerdict assess_sweep(const std::vector<SweepRow>& rows, double threshold, double z = 4.0);

/// Default final-value threshold for each sweep kind (0.99 and 0.95).
[[nodiscard]] double default_sweep_threshold(SweepKind kind);

/// Rao-Blackwellised value of the same probability as sweep_dimension: the
/// direction is integrated out exactly through the spherical-cap measure and
/// only the radii are simulated. Independent cross-check of the direct estimate.
[[nodiscard]] MCResult sweep_cap_crosscheck(SweepKind kind, int p, const SweepSchedule& schedule, std::uint64_t n,
                                            const SeedSpec& seed, unsigned workers = 1);

}  // namespace steinfx
