#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "steinfx/checks/acceptance.hpp"
#include "steinfx/core.hpp"
#include "steinfx/dist.hpp"
#include "steinfx/estimators.hpp"
#include "steinfx/geometry.hpp"
#include "steinfx/montecarlo.hpp"
#include "steinfx/symmetry.hpp"

namespace steinfx::cli {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

template <class T>
bool parse_number(const std::string& s, T& value) {
    if (s.empty()) return false;
    const char* first = s.data();
    if constexpr (std::is_integral_v<T>) {
        if (*first == '+') ++first;
    }
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last;
}

// Shortest round-trip decimal; the same text feeds CSV cells and JSON numbers.
std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    json verdict = json::object();
    bool check_passed = true;
};

std::string csv_cell(const Cell& c) {
    struct V {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(double d) const { return num(d); }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "1" : "0"; }
    };
    return std::visit(V{}, c);
}

json json_cell(const Cell& c) {
    struct V {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(const std::string& s) const { return s; }
        json operator()(double d) const {
            if (!std::isfinite(d)) return num(d);
            return d;
        }
        json operator()(std::int64_t i) const { return i; }
        json operator()(bool b) const { return b; }
    };
    return std::visit(V{}, c);
}

std::string verdict_text(const json& v) {
    std::string s;
    for (auto it = v.begin(); it != v.end(); ++it) {
        if (!s.empty()) s += ' ';
        s += it.key() + '=';
        if (it->is_boolean()) {
            s += it->get<bool>() ? "yes" : "no";
        } else if (it->is_number_float()) {
            s += num(it->get<double>());
        } else if (it->is_string()) {
            s += it->get<std::string>();
        } else {
            s += it->dump();
        }
    }
    return s;
}

struct Common {
    std::uint64_t seed = 0;
    std::uint64_t n = 1'000'000;
    unsigned workers = 1;
    std::string format = "csv";
    std::string out;
    bool check = false;
};

json provenance(const std::string& command, const Common& c, const json& config) {
    json p;
    p["tool"] = "steinfx";
    p["version"] = kToolVersion;
    p["command"] = command;
    p["master_seed"] = c.seed;
    p["config"] = config;
    return p;
}

void write_table(std::ostream& os, const std::string& format, const json& prov, const Table& t) {
    if (format == "json") {
        json doc;
        doc["provenance"] = prov;
        doc["columns"] = t.columns;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json row = json::array();
            for (const auto& c : r) row.push_back(json_cell(c));
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        if (!t.verdict.empty()) doc["verdict"] = t.verdict;
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# tool: steinfx " << kToolVersion << '\n';
    os << "# command: " << prov["command"].get<std::string>() << '\n';
    os << "# master_seed: " << prov["master_seed"].get<std::uint64_t>() << '\n';
    os << "# config: " << prov["config"].dump() << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << '\n';
    }
    if (!t.verdict.empty()) os << "# verdict: " << verdict_text(t.verdict) << '\n';
}

void add_common(CLI::App* sub, Common& c, bool with_n) {
    sub->add_option("--seed", c.seed, "Master seed (u64)")->capture_default_str();
    if (with_n) sub->add_option("--n", c.n, "Monte Carlo draws")->capture_default_str();
    sub->add_option("--workers", c.workers, "Worker threads (does not change output)")->capture_default_str();
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", c.out, "Output path (default stdout)");
    sub->add_flag("--check", c.check, "Exit 4 when any verdict fails");
}

// --- points and scenario config -------------------------------------------

Point point_from_json(const json& v, std::optional<std::size_t>& dim, const std::string& field) {
    if (v.is_number()) {
        if (!dim) throw UsageError("scenario field '" + field + "': a scalar fill needs \"p\" to be given");
        return Point(*dim, v.get<double>());
    }
    if (!v.is_array() || v.empty()) {
        throw UsageError("scenario field '" + field + "': expected a number or a non-empty array of numbers");
    }
    std::vector<double> coords;
    for (const auto& e : v) {
        if (!e.is_number()) throw UsageError("scenario field '" + field + "': array entries must be numbers");
        coords.push_back(e.get<double>());
    }
    if (dim && *dim != coords.size()) {
        throw UsageError("scenario field '" + field + "': has " + std::to_string(coords.size()) +
                         " coordinates, expected p = " + std::to_string(*dim));
    }
    dim = coords.size();
    return Point(std::move(coords));
}

void reject_unknown(const json& obj, const std::vector<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw UsageError("unknown field '" + it.key() + "' in " + where);
        }
    }
}

double number_field(const json& obj, const std::string& key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw UsageError(where + " field '" + key + "': expected a number");
    return obj[key].get<double>();
}

std::vector<Metric> all_metrics() {
    return {EventKind::B1c,
            EventKind::B2c,
            EventKind::PC_JS,
            EventKind::PC_JSplus,
            EventKind::ReverseHarm,
            EstimatorKind{IdentityEstimator{}},
            EstimatorKind{JamesSteinEstimator{}},
            EstimatorKind{JamesSteinPlusEstimator{}}};
}

Metric parse_metric(const std::string& name) {
    for (const auto& m : all_metrics()) {
        if (metric_name(m) == name) return m;
    }
    const std::string prefix = "MSE_FixedGamma(";
    if (name.rfind(prefix, 0) == 0 && name.back() == ')') {
        double g = 0.0;
        if (parse_number(name.substr(prefix.size(), name.size() - prefix.size() - 1), g)) {
            return EstimatorKind{FixedGammaEstimator{ShrinkFactor(g)}};
        }
    }
    throw UsageError("scenario field 'metrics': unknown metric '" + name +
                     "' (expected B1c, B2c, PC_JS, PC_JSplus, ReverseHarm, MSE_Identity, MSE_JamesStein, "
                     "MSE_JamesSteinPlus or MSE_FixedGamma(g))");
}

struct ScenarioConfig {
    ScenarioSpec spec;
    std::vector<Metric> metrics;
};

ScenarioConfig parse_scenario(const json& doc) {
    if (!doc.is_object()) throw UsageError("scenario config must be a JSON object");
    reject_unknown(doc, {"p", "sigma", "delta", "target_rule", "metrics"}, "scenario config");
    ScenarioConfig cfg;
    std::optional<std::size_t> dim;
    if (doc.contains("p")) {
        if (!doc["p"].is_number_integer() || doc["p"].get<std::int64_t>() < 1) {
            throw UsageError("scenario field 'p': expected a positive integer");
        }
        dim = doc["p"].get<std::size_t>();
    }
    cfg.spec.sigma = number_field(doc, "sigma", 1.0, "scenario");
    if (!doc.contains("delta")) {
        if (!dim) throw UsageError("scenario config needs \"p\" or \"delta\"");
        cfg.spec.delta = Point(*dim);
    } else {
        cfg.spec.delta = point_from_json(doc["delta"], dim, "delta");
    }
    if (!doc.contains("target_rule") || !doc["target_rule"].is_object()) {
        throw UsageError("scenario field 'target_rule': expected an object with a \"kind\"");
    }
    const json& rule = doc["target_rule"];
    const std::string kind = rule.value("kind", "");
    if (kind == "fixed") {
        reject_unknown(rule, {"kind", "delta0"}, "target_rule");
        if (!rule.contains("delta0")) throw UsageError("target_rule field 'delta0' is required for kind fixed");
        cfg.spec.target_rule = FixedTarget{point_from_json(rule["delta0"], dim, "target_rule.delta0")};
    } else if (kind == "independent_prior") {
        reject_unknown(rule, {"kind", "psi", "tau"}, "target_rule");
        Point psi = rule.contains("psi") ? point_from_json(rule["psi"], dim, "target_rule.psi") : cfg.spec.delta;
        cfg.spec.target_rule = IndependentPriorTarget{std::move(psi), number_field(rule, "tau", 1.0, "target_rule")};
    } else if (kind == "data_centered") {
        reject_unknown(rule, {"kind", "tau"}, "target_rule");
        cfg.spec.target_rule = DataCenteredTarget{number_field(rule, "tau", 1.0, "target_rule")};
    } else {
        throw UsageError("target_rule field 'kind': expected fixed, independent_prior or data_centered");
    }
    if (doc.contains("metrics")) {
        if (!doc["metrics"].is_array() || doc["metrics"].empty()) {
            throw UsageError("scenario field 'metrics': expected a non-empty array of names");
        }
        for (const auto& m : doc["metrics"]) {
            if (!m.is_string()) throw UsageError("scenario field 'metrics': names must be strings");
            cfg.metrics.push_back(parse_metric(m.get<std::string>()));
        }
    } else {
        cfg.metrics = all_metrics();
    }
    try {
        cfg.spec.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("scenario config: ") + e.what());
    }
    return cfg;
}

json point_json(const Point& p) {
    json a = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) a.push_back(p[i]);
    return a;
}

json scenario_json(const ScenarioConfig& cfg) {
    json doc;
    doc["p"] = cfg.spec.dim();
    doc["sigma"] = cfg.spec.sigma;
    doc["delta"] = point_json(cfg.spec.delta);
    json rule;
    if (const auto* f = std::get_if<FixedTarget>(&cfg.spec.target_rule)) {
        rule["kind"] = "fixed";
        rule["delta0"] = point_json(f->delta0);
    } else if (const auto* ip = std::get_if<IndependentPriorTarget>(&cfg.spec.target_rule)) {
        rule["kind"] = "independent_prior";
        rule["psi"] = point_json(ip->psi);
        rule["tau"] = ip->tau;
    } else {
        rule["kind"] = "data_centered";
        rule["tau"] = std::get<DataCenteredTarget>(cfg.spec.target_rule).tau;
    }
    doc["target_rule"] = rule;
    json metrics = json::array();
    for (const auto& m : cfg.metrics) metrics.push_back(metric_name(m));
    doc["metrics"] = metrics;
    return doc;
}

// --- subcommands ------------------------------------------------------------

struct ExactArgs {
    std::string p = "3";
    std::string dist = "0";
};

Table cmd_exact(const ExactArgs& a, json& config) {
    const auto ps = parse_int_list(a.p, "--p");
    const auto ds = parse_real_list(a.dist, "--dist");
    for (int p : ps) {
        if (p < 3) throw UsageError("invalid value for --p: " + std::to_string(p) + " (need p >= 3)");
    }
    for (double d : ds) {
        if (!(d >= 0.0) || !std::isfinite(d)) throw UsageError("invalid value for --dist: " + num(d) + " (need >= 0)");
    }
    config["p"] = ps;
    config["dist"] = ds;
    Table t;
    t.columns = {"p", "dist", "eta", "pc_exact"};
    bool above = true;
    for (int p : ps) {
        for (double d : ds) {
            const PCQuery q = PCQuery::from_distance(p, d, 1.0);
            const double pc = pc_exact_js(q);
            above = above && pc > 0.5;
            t.rows.push_back({std::int64_t{p}, d, q.eta, pc});
        }
    }
    t.verdict["all_above_half"] = above;
    t.check_passed = above;
    return t;
}

struct SimulateArgs {
    std::string config_path;
    std::string scenario_text;
};

Table cmd_simulate(const SimulateArgs& a, const Common& c, json& config) {
    if (a.config_path.empty() == a.scenario_text.empty()) {
        throw UsageError("simulate needs exactly one of --config <file> or --scenario <json>");
    }
    std::string text = a.scenario_text;
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) throw UsageError("cannot read --config file '" + a.config_path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("scenario config is not valid JSON: ") + e.what());
    }
    const ScenarioConfig sc = parse_scenario(doc);
    config = scenario_json(sc);
    config["n"] = c.n;

    const ScenarioRun run = run_scenario(sc.spec, sc.metrics, {}, c.n, SeedSpec{c.seed, 0}, c.workers);
    std::optional<double> pc_exact;
    if (const auto* f = std::get_if<FixedTarget>(&sc.spec.target_rule); f && sc.spec.dim() >= 3) {
        pc_exact = pc_exact_js(PCQuery::from_distance(static_cast<int>(sc.spec.dim()),
                                                      norm(sc.spec.delta - f->delta0), sc.spec.sigma));
    }
    Table t;
    t.columns = {"metric", "estimate", "se", "ci_low", "ci_high", "n", "exact"};
    bool agree = true;
    for (std::size_t i = 0; i < sc.metrics.size(); ++i) {
        const MCResult& r = run.metrics[i];
        Cell exact;
        const auto* e = std::get_if<EventKind>(&sc.metrics[i]);
        if (e && *e == EventKind::PC_JS && pc_exact) {
            exact = *pc_exact;
            const double se = std::sqrt(*pc_exact * (1.0 - *pc_exact) / static_cast<double>(r.n));
            agree = agree && std::fabs(r.estimate - *pc_exact) <= 4.0 * se;
        }
        t.rows.push_back({metric_name(sc.metrics[i]), r.estimate, r.std_error, r.ci95_low, r.ci95_high,
                          static_cast<std::int64_t>(r.n), exact});
    }
    if (pc_exact) {
        t.verdict["pc_js_within_4se_of_exact"] = agree;
        t.check_passed = agree;
    }
    return t;
}

struct RegionArgs {
    std::string figure;
    int p = 3;
    double sigma = 1.0;
    double dist = 1.0;
    int resolution = 101;
    double extent = 0.0;
};

Table cmd_region_grid(const RegionArgs& a, json& config) {
    static const std::vector<std::string> figures{"fig1", "fig2", "fig3a", "fig3b", "fig4a", "fig4b"};
    if (std::find(figures.begin(), figures.end(), a.figure) == figures.end()) {
        throw UsageError("invalid value for --figure: '" + a.figure + "' (expected fig1, fig2, fig3a, fig3b, fig4a, fig4b)");
    }
    const bool needs_js = a.figure[3] == '3' || a.figure[3] == '4';
    if (a.p < (needs_js ? 3 : 2)) {
        throw UsageError("invalid value for --p: " + a.figure + " needs p >= " + (needs_js ? "3" : "2"));
    }
    if (!(a.sigma > 0.0)) throw UsageError("invalid value for --sigma: need sigma > 0");
    if (!(a.dist > 0.0) || !std::isfinite(a.dist)) throw UsageError("invalid value for --dist: need dist > 0");
    if (a.resolution < 2 || a.resolution > 4001) throw UsageError("invalid value for --resolution: need 2..4001");
    if (!(a.extent >= 0.0)) throw UsageError("invalid value for --extent: need extent >= 0");

    const double radius = a.sigma * std::sqrt(std::max(0.0, a.p - 2.0));  // truncation radius
    const double half = radius / 2.0;
    if (a.figure == "fig3a" && !(a.dist < half)) {
        throw UsageError("fig3a requires ||X - delta|| < (sigma/2) sqrt(p - 2)");
    }
    if (a.figure == "fig3b" && !(a.dist > half)) {
        throw UsageError("fig3b requires ||X - delta|| > (sigma/2) sqrt(p - 2)");
    }
    if (a.figure == "fig4a" && !(a.dist < half)) {
        throw UsageError("fig4a requires ||delta0 - delta|| < (sigma/2) sqrt(p - 2)");
    }
    if (a.figure == "fig4b" && !(a.dist > half)) {
        throw UsageError("fig4b requires ||delta0 - delta|| > (sigma/2) sqrt(p - 2)");
    }

    double extent = a.extent;
    if (extent == 0.0) {
        const char f = a.figure[3];
        if (f == '1') extent = 2.5 * a.dist;
        else if (f == '2') extent = 2.0 * a.dist;
        else extent = std::max(2.0 * a.dist, a.dist + 1.5 * radius);
    }
    config["figure"] = a.figure;
    config["p"] = a.p;
    config["sigma"] = a.sigma;
    config["dist"] = a.dist;
    config["resolution"] = a.resolution;
    config["extent"] = extent;

    const std::size_t p = static_cast<std::size_t>(a.p);
    const Point delta(p);
    Point anchor(p);  // X for fig2/fig3, delta0 for fig1/fig4
    anchor[0] = a.dist;
    const double cell = 2.0 * extent / (a.resolution - 1);
    auto at = [&](double u, double v) {
        Point q(p);
        q[0] = u;
        q[1] = v;
        return q;
    };

    Table t;
    t.columns = {"u", "v", "label_flags"};
    std::int64_t violations = 0, informational = 0, border_hits = 0;
    for (int j = 0; j < a.resolution; ++j) {
        const double v = -extent + cell * j;
        for (int i = 0; i < a.resolution; ++i) {
            const double u = -extent + cell * i;
            const Point q = at(u, v);
            const bool border = i == 0 || j == 0 || i == a.resolution - 1 || j == a.resolution - 1;
            std::int64_t flags = 0;
            if (a.figure == "fig1") {
                // q is X; anchor is delta0.
                const bool in_b1 = !overestimates_distance(q, delta, anchor);
                const bool in_b2 = !shrinkage_can_help(q, delta, anchor);
                const bool in_h = u < 0.0;
                flags = (in_b1 ? 1 : 0) | (in_b2 ? 2 : 0) | (in_h ? 4 : 0);
                if (in_b2 && !in_b1) ++violations;
                if (in_h && in_b1) ++violations;
            } else if (a.figure == "fig2") {
                // q is delta0; anchor is X.
                const bool helps = target_can_help(q, anchor, delta);
                flags = helps ? 1 : 0;
                if (std::fabs(u - a.dist) > cell && helps != (u < a.dist)) ++violations;
            } else if (a.figure[3] == '3') {
                const RegionLabel l = classify_target(q, anchor, delta, a.sigma);
                flags = (l.improves ? 1 : 0) | (l.in_ball_B ? 2 : 0) | (l.in_halfspace_K ? 4 : 0) |
                        (l.inside_truncation_ball ? 8 : 0);
                if ((l.in_ball_B || l.in_halfspace_K) != l.improves) ++violations;
                const double lx = squared_distance(anchor, delta);
                const double le = squared_distance(js_plus(anchor, q, a.sigma), delta);
                if (std::fabs(lx - le) > 1e-9 * (lx + squared_distance(q, delta) + radius * radius) &&
                    (le < lx) != l.improves) {
                    ++violations;
                }
                if (l.improves && border) ++border_hits;
            } else {
                // fig4: q is X; anchor is delta0.
                const bool in_b1 = squared_distance(q, anchor) < radius * radius;
                const bool in_b2 = squared_distance(q, delta) < a.dist * a.dist;
                bool in_c = false, in_d = false, worse = false;
                if (squared_distance(q, anchor) > 0.0) {
                    const AppCMembership m = appc_membership(q, delta, anchor, a.sigma);
                    in_c = m.in_C;
                    in_d = m.in_D;
                    worse = squared_distance(js(q, anchor, a.sigma), delta) > squared_distance(q, delta);
                }
                flags = (in_b1 ? 1 : 0) | (in_b2 ? 2 : 0) | (in_c ? 4 : 0) | (in_d ? 8 : 0) | (worse ? 16 : 0);
                if (in_b2 && !worse) {
                    if (in_b1) ++violations;
                    else ++informational;
                }
            }
            t.rows.push_back({u, v, flags});
        }
    }
    t.verdict["violations"] = violations;
    if (a.figure[3] == '3') t.verdict["bounded"] = border_hits == 0;
    if (a.figure[3] == '4') t.verdict["b2_outside_b1_not_worse"] = informational;
    t.check_passed = violations == 0;
    return t;
}

struct SweepArgs {
    std::string prop;
    std::string p;
    SweepSchedule schedule;
    double threshold = -1.0;
};

Table cmd_sweep(const SweepArgs& a, const Common& c, json& config) {
    SweepKind kind;
    try {
        kind = parse_sweep_kind(a.prop);
    } catch (const DomainError&) {
        throw UsageError("invalid value for --prop: '" + a.prop + "' (expected prop2 or prop3)");
    }
    const auto ps = parse_int_list(a.p.empty() ? (kind == SweepKind::Prop2 ? "4,8,16,32,64,128,256" : "4,8,16,32,64")
                                              : a.p,
                                   "--p");
    if (kind == SweepKind::Prop3) {
        for (int p : ps) {
            if (p < 3) throw UsageError("invalid value for --p: prop3 needs p >= 3");
        }
    }
    for (std::size_t i = 1; i < ps.size(); ++i) {
        if (ps[i] <= ps[i - 1]) throw UsageError("invalid value for --p: the list must be strictly ascending");
    }
    if (c.n == 0) throw UsageError("invalid value for --n: need n >= 1");
    const double threshold = a.threshold >= 0.0 ? a.threshold : default_sweep_threshold(kind);
    config["prop"] = sweep_name(kind);
    config["p"] = ps;
    config["sigma"] = a.schedule.sigma;
    config["tau_scale"] = a.schedule.tau_scale;
    config["tau_exponent"] = a.schedule.tau_exponent;
    if (kind == SweepKind::Prop2) {
        config["psi_scale"] = a.schedule.psi_scale;
        config["psi_exponent"] = a.schedule.psi_exponent;
    }
    config["threshold"] = threshold;
    config["n"] = c.n;

    const auto rows = sweep_dimension(kind, ps, a.schedule, c.n, SeedSpec{c.seed, 0}, c.workers);
    const SweepVerdict v = assess_sweep(rows, threshold);
    Table t;
    t.columns = {"p", "estimate", "se", "n"};
    for (const auto& r : rows) {
        t.rows.push_back({std::int64_t{r.p}, r.estimate, r.std_error, static_cast<std::int64_t>(r.n)});
    }
    t.verdict["monotone"] = v.monotone;
    t.verdict["threshold_met"] = v.threshold_met;
    t.verdict["threshold"] = v.threshold;
    t.check_passed = v.monotone && v.threshold_met;
    return t;
}

struct SymmetryArgs {
    std::string sampler;
    int p = 3;
    int halfspaces = 32;
    int cones = 8;
    double alpha = 1e-3;
    double sigma = 1.0;
    double shift = 1.0;
    std::string scales;
};

Table cmd_symmetry_check(const SymmetryArgs& a, const Common& c, json& config) {
    SamplerKind kind;
    try {
        kind = parse_sampler_kind(a.sampler);
    } catch (const DomainError&) {
        throw UsageError("invalid value for --sampler: '" + a.sampler +
                         "' (expected SphericalGaussian, Elliptical, DirectionalOnly or AsymmetricControl)");
    }
    if (a.halfspaces < 0 || a.cones < 0 || a.halfspaces + a.cones == 0) {
        throw UsageError("invalid battery size: --halfspaces plus --cones must be at least 1");
    }
    if (a.p < 2) throw UsageError("invalid value for --p: need p >= 2");
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("invalid value for --alpha: need 0 < alpha < 1");
    if (c.n == 0) throw UsageError("invalid value for --n: need n >= 1");

    SymmetrySampler s;
    const std::size_t p = static_cast<std::size_t>(a.p);
    switch (kind) {
        case SamplerKind::SphericalGaussian: s = SymmetrySampler::spherical(p, a.sigma); break;
        case SamplerKind::Elliptical: {
            std::vector<double> scales =
                a.scales.empty() ? std::vector<double>(p, 1.0) : parse_real_list(a.scales, "--scales");
            if (scales.size() != p) throw UsageError("invalid value for --scales: need exactly p entries");
            s = SymmetrySampler::elliptical(std::move(scales));
            break;
        }
        case SamplerKind::DirectionalOnly: s = SymmetrySampler::directional_only(p); break;
        case SamplerKind::AsymmetricControl: s = SymmetrySampler::asymmetric_control(p, a.shift); break;
    }
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("invalid sampler parameters: ") + e.what());
    }
    config["sampler"] = sampler_name(kind);
    config["p"] = a.p;
    if (kind == SamplerKind::SphericalGaussian) config["sigma"] = a.sigma;
    if (kind == SamplerKind::Elliptical) config["scales"] = s.scales;
    if (kind == SamplerKind::AsymmetricControl) config["shift"] = a.shift;
    config["halfspaces"] = a.halfspaces;
    config["cones"] = a.cones;
    config["alpha"] = a.alpha;
    config["n"] = c.n;

    const SymmetryBattery b =
        run_symmetry_battery(s, a.halfspaces, a.cones, c.n, SeedSpec{c.seed, 0}, a.alpha, c.workers);
    Table t;
    t.columns = {"test", "index", "estimate", "reference", "se", "z", "pass"};
    double max_z = 0.0;
    for (const auto& r : b.rows) {
        t.rows.push_back({r.test, std::int64_t{r.index}, r.estimate, r.reference, r.std_error, r.z, r.pass});
        max_z = std::max(max_z, std::fabs(r.z));
    }
    const bool control = kind == SamplerKind::AsymmetricControl;
    t.verdict["critical_z"] = b.critical_z;
    t.verdict["failures"] = b.failures();
    t.verdict["max_abs_z"] = max_z;
    t.verdict["expected"] = control ? "reject" : "accept";
    t.check_passed = control ? b.failures() > 0 : b.all_pass();
    return t;
}

int cmd_selfcheck(const Common& c, std::ostream& os) {
    checks::AcceptanceConfig cfg;
    cfg.master_seed = c.seed;
    cfg.workers = c.workers;
    const auto results = checks::run_acceptance(cfg);
    const json prov = provenance("selfcheck", c, json::object());
    if (c.format == "json") {
        json doc;
        doc["provenance"] = prov;
        json crit = json::array();
        for (const auto& r : results) {
            crit.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"details", r.details}});
        }
        doc["criteria"] = crit;
        doc["all_pass"] = checks::all_pass(results);
        os << doc.dump(2) << '\n';
    } else {
        os << "# tool: steinfx " << kToolVersion << '\n';
        os << "# command: selfcheck\n";
        os << "# master_seed: " << c.seed << '\n';
        os << checks::format_report(results);
    }
    return c.check && !checks::all_pass(results) ? kExitCheckFailed : kExitOk;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("invalid value for " + flag + ": '" + text + "' (" + why + ")");
    };
    std::vector<int> values;
    if (trim(text).empty()) throw bad("empty list");
    for (const auto& item : split(text, ',')) {
        if (item.empty()) throw bad("empty list item");
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            int v = 0;
            if (!parse_number(item, v)) throw bad("'" + item + "' is not an integer");
            values.push_back(v);
            continue;
        }
        int lo = 0, hi = 0;
        if (!parse_number(trim(item.substr(0, dots)), lo) || !parse_number(trim(item.substr(dots + 2)), hi)) {
            throw bad("range '" + item + "' must look like a..b");
        }
        if (hi < lo) throw bad("range '" + item + "' is descending");
        if (hi - lo > 100000) throw bad("range '" + item + "' is too long");
        for (int v = lo; v <= hi; ++v) values.push_back(v);
    }
    return values;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("invalid value for " + flag + ": '" + text + "' (" + why + ")");
    };
    std::vector<double> values;
    if (trim(text).empty()) throw bad("empty list");
    for (const auto& item : split(text, ',')) {
        double v = 0.0;
        if (!parse_number(item, v) || !std::isfinite(v)) throw bad("'" + item + "' is not a finite number");
        values.push_back(v);
    }
    return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shrinkage-estimator numerics: exact identities, region grids and Monte Carlo checks", "steinfx"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Common common;
    ExactArgs exact_args;
    SimulateArgs sim_args;
    RegionArgs region_args;
    SweepArgs sweep_args;
    SymmetryArgs sym_args;

    auto* exact = app.add_subcommand("exact", "Exact Pitman closeness of JS from the noncentral chi-square identity");
    exact->add_option("--p", exact_args.p, "Dimensions, e.g. 3..50,60")->capture_default_str();
    exact->add_option("--dist", exact_args.dist, "Distances ||delta - delta0|| / sigma, comma separated")
        ->capture_default_str();
    add_common(exact, common, false);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates for a scenario config");
    simulate->add_option("--config", sim_args.config_path, "Scenario JSON file");
    simulate->add_option("--scenario", sim_args.scenario_text, "Scenario JSON text");
    add_common(simulate, common, true);

    auto* region = app.add_subcommand("region-grid", "Region labels over a 2-D slice through delta");
    region->add_option("--figure", region_args.figure, "fig1, fig2, fig3a, fig3b, fig4a or fig4b")->required();
    region->add_option("--p", region_args.p, "Dimension")->capture_default_str();
    region->add_option("--sigma", region_args.sigma, "Noise scale")->capture_default_str();
    region->add_option("--dist", region_args.dist,
                       "||X - delta|| for fig2/fig3, ||delta0 - delta|| for fig1/fig4")
        ->capture_default_str();
    region->add_option("--resolution", region_args.resolution, "Grid points per axis")->capture_default_str();
    region->add_option("--extent", region_args.extent, "Half-width of the grid (0 picks one)")->capture_default_str();
    add_common(region, common, false);

    auto* sweep = app.add_subcommand("sweep", "Dimension sweep for the large-p limits");
    sweep->add_option("--prop", sweep_args.prop, "prop2 or prop3")->required();
    sweep->add_option("--p", sweep_args.p, "Ascending dimensions, e.g. 4,8,16");
    sweep->add_option("--sigma", sweep_args.schedule.sigma, "Noise scale")->capture_default_str();
    sweep->add_option("--tau-scale", sweep_args.schedule.tau_scale, "tau = sigma * scale * p^exponent")
        ->capture_default_str();
    sweep->add_option("--tau-exponent", sweep_args.schedule.tau_exponent)->capture_default_str();
    sweep->add_option("--psi-scale", sweep_args.schedule.psi_scale, "||psi - delta|| = sigma * scale * p^exponent")
        ->capture_default_str();
    sweep->add_option("--psi-exponent", sweep_args.schedule.psi_exponent)->capture_default_str();
    sweep->add_option("--threshold", sweep_args.threshold, "Final-value threshold (default per prop)");
    add_common(sweep, common, true);

    auto* symmetry = app.add_subcommand("symmetry-check", "Halfspace and cone battery for directional symmetry");
    symmetry->add_option("--sampler", sym_args.sampler, "Sampler kind")->required();
    symmetry->add_option("--p", sym_args.p, "Dimension")->capture_default_str();
    symmetry->add_option("--halfspaces", sym_args.halfspaces, "Random central halfspaces")->capture_default_str();
    symmetry->add_option("--cones", sym_args.cones, "Random rotated-orthant cones")->capture_default_str();
    symmetry->add_option("--alpha", sym_args.alpha, "Two-sided level per test")->capture_default_str();
    symmetry->add_option("--sigma", sym_args.sigma, "SphericalGaussian scale")->capture_default_str();
    symmetry->add_option("--shift", sym_args.shift, "AsymmetricControl mean shift")->capture_default_str();
    symmetry->add_option("--scales", sym_args.scales, "Elliptical axis scales, comma separated");
    add_common(symmetry, common, true);

    auto* selfcheck = app.add_subcommand("selfcheck", "Run the acceptance suite");
    add_common(selfcheck, common, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::ostringstream buffer;
    int code = kExitOk;
    try {
        json config = json::object();
        std::optional<Table> table;
        std::string command;
        if (exact->parsed()) {
            command = "exact";
            table = cmd_exact(exact_args, config);
        } else if (simulate->parsed()) {
            command = "simulate";
            table = cmd_simulate(sim_args, common, config);
        } else if (region->parsed()) {
            command = "region-grid";
            table = cmd_region_grid(region_args, config);
        } else if (sweep->parsed()) {
            command = "sweep";
            table = cmd_sweep(sweep_args, common, config);
        } else if (symmetry->parsed()) {
            command = "symmetry-check";
            table = cmd_symmetry_check(sym_args, common, config);
        } else {
            code = cmd_selfcheck(common, buffer);
        }
        if (table) {
            write_table(buffer, common.format, provenance(command, common, config), *table);
            if (common.check && !table->check_passed) code = kExitCheckFailed;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {  // list parsing and DomainError
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (common.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(common.out, std::ios::binary);
        if (!file || !(file << buffer.str())) {
            err << "error: cannot write --out file '" << common.out << "'\n";
            return kExitUsage;
        }
    }
    if (code == kExitCheckFailed) err << "check failed\n";
    return code;
}

}  // namespace steinfx::cli
