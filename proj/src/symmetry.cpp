#include "steinfx/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "steinfx/dist.hpp"
#include "steinfx/parallel.hpp"

namespace steinfx {

std::string sampler_name(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::SphericalGaussian: return "SphericalGaussian";
        case SamplerKind::Elliptical: return "Elliptical";
        case SamplerKind::DirectionalOnly: return "DirectionalOnly";
        case SamplerKind::AsymmetricControl: return "AsymmetricControl";
    }
    return "?";
}

SamplerKind parse_sampler_kind(const std::string& name) {
    std::string lower;
    for (char c : name) {
        if (c != '-' && c != '_') lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    for (auto k : {SamplerKind::SphericalGaussian, SamplerKind::Elliptical, SamplerKind::DirectionalOnly,
                   SamplerKind::AsymmetricControl}) {
        std::string cand;
        for (char c : sampler_name(k)) cand.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (cand == lower) return k;
    }
    throw DomainError("unknown sampler kind '" + name + "'");
}

SymmetrySampler SymmetrySampler::spherical(std::size_t p, double sigma) {
    SymmetrySampler s;
    s.kind = SamplerKind::SphericalGaussian;
    s.p = p;
    s.sigma = sigma;
    return s;
}

SymmetrySampler SymmetrySampler::elliptical(std::vector<double> scales) {
    SymmetrySampler s;
    s.kind = SamplerKind::Elliptical;
    s.p = scales.size();
    s.scales = std::move(scales);
    return s;
}

SymmetrySampler SymmetrySampler::directional_only(std::size_t p) {
    SymmetrySampler s;
    s.kind = SamplerKind::DirectionalOnly;
    s.p = p;
    return s;
}

SymmetrySampler SymmetrySampler::asymmetric_control(std::size_t p, double shift) {
    SymmetrySampler s;
    s.kind = SamplerKind::AsymmetricControl;
    s.p = p;
    s.shift = shift;
    return s;
}

void SymmetrySampler::validate() const {
    if (p < 1) {
        throw DomainError("SymmetrySampler: p must be >= 1");
    }
    switch (kind) {
        case SamplerKind::SphericalGaussian:
            if (!(sigma > 0.0)) throw DomainError("SymmetrySampler: sigma must be > 0");
            break;
        case SamplerKind::Elliptical:
            if (scales.size() != p) throw DomainError("SymmetrySampler: need one scale per coordinate");
            for (double v : scales) {
                if (!(v > 0.0)) throw DomainError("SymmetrySampler: scales must be > 0");
            }
            break;
        case SamplerKind::DirectionalOnly:
            if (p < 2) throw DomainError("SymmetrySampler: DirectionalOnly needs p >= 2");
            break;
        case SamplerKind::AsymmetricControl:
            if (shift == 0.0 || !std::isfinite(shift)) {
                throw DomainError("SymmetrySampler: AsymmetricControl needs a finite nonzero shift");
            }
            break;
    }
}

void HalfspaceSpec::validate() const {
    if (!(squared_norm(normal) > 0.0)) {
        throw DomainError("HalfspaceSpec: normal must be nonzero");
    }
}

Point uniform_sphere(std::size_t p, RandomStream& g) {
    if (p < 2) {
        throw DomainError("uniform_sphere: p must be >= 2");
    }
    Point z(p);
    double r2 = 0.0;
    while (r2 == 0.0) {
        g.fill_normal(z.coords());
        r2 = squared_norm(z);
    }
    return (1.0 / std::sqrt(r2)) * std::move(z);
}

Point sample(const SymmetrySampler& s, RandomStream& g) {
    Point y(s.p);
    switch (s.kind) {
        case SamplerKind::SphericalGaussian:
            g.fill_normal(y.coords());
            y *= s.sigma;
            break;
        case SamplerKind::Elliptical:
            g.fill_normal(y.coords());
            for (std::size_t i = 0; i < s.p; ++i) y[i] *= s.scales[i];
            break;
        case SamplerKind::DirectionalOnly: {
            y = uniform_sphere(s.p, g);
            y *= (y[0] > 0.0) ? 1.0 : 2.0;
            break;
        }
        case SamplerKind::AsymmetricControl:
            g.fill_normal(y.coords());
            y[0] += s.shift;
            break;
    }
    return y;
}

MCResult empirical_halfspace_prob(const SymmetrySampler& s, const HalfspaceSpec& h, std::uint64_t n,
                                  const SeedSpec& seed, unsigned workers) {
    s.validate();
    h.validate();
    require_same_dim(Point(s.p), h.normal, "empirical_halfspace_prob");
    if (n < 1) {
        throw DomainError("empirical_halfspace_prob: n must be >= 1");
    }
    const auto counts = run_chunked<std::uint64_t>(n, workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
        RandomStream g = derive_stream(seed, c);
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < m; ++i) hits += h.contains(sample(s, g)) ? 1 : 0;
        return hits;
    });
    std::uint64_t total = 0;
    for (auto v : counts) total += v;
    return MCResult::proportion(total, n);
}

ConeSymmetryResult empirical_cone_symmetry(const SymmetrySampler& s, const std::vector<HalfspaceSpec>& cone,
                                           std::uint64_t n, const SeedSpec& seed, unsigned workers) {
    s.validate();
    if (cone.empty()) {
        throw DomainError("empirical_cone_symmetry: cone needs at least one halfspace");
    }
    for (const auto& h : cone) {
        h.validate();
        require_same_dim(Point(s.p), h.normal, "empirical_cone_symmetry");
        if (h.offset != 0.0) {
            throw DomainError("empirical_cone_symmetry: cone halfspaces must be central (offset 0)");
        }
    }
    if (n < 1) {
        throw DomainError("empirical_cone_symmetry: n must be >= 1");
    }
    struct Partial {
        std::uint64_t forward = 0;
        std::uint64_t reflected = 0;
        MomentSums diff;
    };
    auto in_cone = [&](const Point& y, double sign) {
        return std::all_of(cone.begin(), cone.end(), [&](const HalfspaceSpec& h) { return sign * dot(y, h.normal) >= 0.0; });
    };
    const auto parts = run_chunked<Partial>(n, workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
        RandomStream g = derive_stream(seed, c);
        Partial part;
        for (std::uint64_t i = 0; i < m; ++i) {
            const Point y = sample(s, g);
            const bool f = in_cone(y, 1.0);
            const bool r = in_cone(y, -1.0);
            part.forward += f ? 1 : 0;
            part.reflected += r ? 1 : 0;
            part.diff.add(static_cast<double>(f) - static_cast<double>(r));
        }
        return part;
    });
    Partial total;
    for (const auto& part : parts) {
        total.forward += part.forward;
        total.reflected += part.reflected;
        total.diff.merge(part.diff);
    }
    return {MCResult::proportion(total.forward, n), MCResult::proportion(total.reflected, n), total.diff.result()};
}

double normal_critical_value(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("normal_critical_value: alpha must lie in (0, 1)");
    }
    double lo = 0.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (2.0 * (1.0 - normal_cdf(mid)) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double chi2_critical_value(double alpha, int df) {
    if (!(alpha > 0.0 && alpha < 1.0) || df < 1) {
        throw DomainError("chi2_critical_value: need alpha in (0, 1) and df >= 1");
    }
    double lo = 0.0, hi = static_cast<double>(df) + 10.0;
    while (chi2_sf(hi, df) > alpha) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (chi2_sf(mid, df) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool SymmetryBattery::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const SymmetryTestRow& r) { return r.pass; });
}

int SymmetryBattery::failures() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const SymmetryTestRow& r) { return !r.pass; }));
}

namespace {

// Rows of a random orthogonal matrix (Gram-Schmidt on Gaussian vectors).
std::vector<Point> random_orthonormal_frame(std::size_t p, RandomStream& g) {
    std::vector<Point> frame;
    while (frame.size() < p) {
        Point v(p);
        g.fill_normal(v.coords());
        for (const Point& q : frame) v -= dot(v, q) * q;
        const double r = norm(v);
        if (r > 1e-8) frame.push_back((1.0 / r) * std::move(v));
    }
    return frame;
}

}  // namespace

SymmetryBattery run_symmetry_battery(const SymmetrySampler& s, int halfspaces, int cones, std::uint64_t n,
                                     const SeedSpec& seed, double alpha, unsigned workers) {
    s.validate();
    if (halfspaces < 0 || cones < 0 || halfspaces + cones == 0) {
        throw DomainError("run_symmetry_battery: battery size must be >= 1");
    }
    SymmetryBattery battery;
    battery.critical_z = normal_critical_value(alpha);
    const double dn = static_cast<double>(n);

    // Geometry of the battery comes from its own stream, the draws from per-test children.
    RandomStream geom = derive_stream(seed.master_seed, child_stream_id(seed.stream_id, 0));
    std::uint64_t test_id = 1;

    for (int i = 0; i < halfspaces; ++i) {
        const HalfspaceSpec h{uniform_sphere(s.p, geom), 0.0};
        const MCResult r =
            empirical_halfspace_prob(s, h, n, SeedSpec{seed.master_seed, child_stream_id(seed.stream_id, test_id++)},
                                     workers);
        SymmetryTestRow row;
        row.test = "halfspace";
        row.index = i;
        row.estimate = r.estimate;
        row.reference = 0.5;
        row.std_error = std::sqrt(0.25 / dn);
        row.z = (r.estimate - 0.5) / row.std_error;
        row.pass = std::fabs(row.z) <= battery.critical_z;
        battery.rows.push_back(row);
    }
    for (int i = 0; i < cones; ++i) {
        std::vector<HalfspaceSpec> cone;
        for (Point& q : random_orthonormal_frame(s.p, geom)) cone.push_back({std::move(q), 0.0});
        const ConeSymmetryResult r =
            empirical_cone_symmetry(s, cone, n, SeedSpec{seed.master_seed, child_stream_id(seed.stream_id, test_id++)},
                                    workers);
        SymmetryTestRow row;
        row.test = "cone";
        row.index = i;
        row.estimate = r.forward.estimate;
        row.reference = r.reflected.estimate;
        row.std_error = r.difference.std_error;
        const double diff = r.difference.estimate;
        row.z = row.std_error > 0.0 ? diff / row.std_error : (diff == 0.0 ? 0.0 : INFINITY);
        row.pass = std::fabs(row.z) <= battery.critical_z;
        battery.rows.push_back(row);
    }
    return battery;
}

DirectionFit direction_goodness_of_fit(const SymmetrySampler& s, std::uint64_t n, const SeedSpec& seed, double alpha,
                                       unsigned workers) {
    s.validate();
    if (s.p > 16) {
        throw DomainError("direction_goodness_of_fit: orthant cells need p <= 16");
    }
    if (n < 1) {
        throw DomainError("direction_goodness_of_fit: n must be >= 1");
    }
    const std::size_t cells = std::size_t{1} << s.p;
    struct Partial {
        std::vector<std::uint64_t> counts;
        std::uint64_t radius_two_positive = 0;
        std::uint64_t positive = 0;
    };
    const auto parts = run_chunked<Partial>(n, workers, [&](std::uint32_t c, std::uint64_t, std::uint64_t m) {
        RandomStream g = derive_stream(seed, c);
        Partial part;
        part.counts.assign(cells, 0);
        for (std::uint64_t i = 0; i < m; ++i) {
            const Point y = sample(s, g);
            std::size_t cell = 0;
            for (std::size_t k = 0; k < s.p; ++k) cell |= (y[k] > 0.0 ? std::size_t{1} : 0) << k;
            ++part.counts[cell];
            if (y[0] > 0.0) {
                ++part.positive;
                if (std::fabs(norm(y) - 2.0) < 1e-9) ++part.radius_two_positive;
            }
        }
        return part;
    });
    DirectionFit fit;
    std::vector<std::uint64_t> counts(cells, 0);
    for (const auto& part : parts) {
        for (std::size_t k = 0; k < cells; ++k) counts[k] += part.counts[k];
        fit.radius_two_on_positive_side += part.radius_two_positive;
        fit.positive_side += part.positive;
    }
    const double expected = static_cast<double>(n) / static_cast<double>(cells);
    CompensatedSum stat;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat.add(d * d / expected);
    }
    fit.chi2_stat = stat.value();
    fit.df = static_cast<int>(cells) - 1;
    fit.critical = chi2_critical_value(alpha, fit.df);
    fit.uniform_ok = fit.chi2_stat <= fit.critical;
    return fit;
}

}  // namespace steinfx
