#pragma once

#include <string>
#include <utility>
#include <vector>

#include "steinfx/core.hpp"
#include "steinfx/rng.hpp"

namespace steinfx {

enum class SamplerKind {
    SphericalGaussian,  ///< N(0, sigma^2 I): spherically symmetric
    Elliptical,         ///< N(0, diag(scales^2)): symmetric, not spherical
    DirectionalOnly,    ///< uniform direction, radius 1 if d_1 > 0 else 2
    AsymmetricControl,  ///< N(shift e_1, I): negative control
};

[[nodiscard]] std::string sampler_name(SamplerKind kind);
/// Accepts the names produced by sampler_name, case-insensitively.
[[nodiscard]] SamplerKind parse_sampler_kind(const std::string& name);

/// Law of the noise vector Y used to exercise directional symmetry.
struct SymmetrySampler {
    SamplerKind kind = SamplerKind::SphericalGaussian;
    std::size_t p = 3;
    double sigma = 1.0;          // SphericalGaussian
    std::vector<double> scales;  // Elliptical, one per coordinate
    double shift = 1.0;          // AsymmetricControl

    static SymmetrySampler spherical(std::size_t p, double sigma = 1.0);
    static SymmetrySampler elliptical(std::vector<double> scales);
    static SymmetrySampler directional_only(std::size_t p);
    static SymmetrySampler asymmetric_control(std::size_t p, double shift = 1.0);

    void validate() const;
};

struct HalfspaceSpec {
    Point normal;
    double offset = 0.0;

    /// Open halfspace {y : normal' y > offset}.
    [[nodiscard]] bool contains(const Point& y) const { return dot(y, normal) > offset; }
    void validate() const;
};

[[nodiscard]] Point sample(const SymmetrySampler& s, RandomStream& g);

/// Uniform point on the unit sphere in R^p (normalised standard Gaussian).
[[nodiscard]] Point uniform_sphere(std::size_t p, RandomStream& g);

/// Pr[Y in H] by Monte Carlo with binomial standard error.
[[nodiscard]] MCResult empirical_halfspace_prob(const SymmetrySampler& s, const HalfspaceSpec& h, std::uint64_t n,
                                                const SeedSpec& seed, unsigned workers = 1);

struct ConeSymmetryResult {
    MCResult forward;     ///< Pr[Y in C]
    MCResult reflected;   ///< Pr[-Y in C]
    MCResult difference;  ///< paired estimate of Pr[Y in C] - Pr[-Y in C]
};

/// Cone C is the intersection of the given central halfspaces.
[[nodiscard]] ConeSymmetryResult empirical_cone_symmetry(const SymmetrySampler& s,
                                                         const std::vector<HalfspaceSpec>& cone, std::uint64_t n,
                                                         const SeedSpec& seed, unsigned workers = 1);

/// Two-sided standard-normal critical value for level alpha.
[[nodiscard]] double normal_critical_value(double alpha);
/// Upper-alpha quantile of the central chi-square with `df` degrees of freedom.
[[nodiscard]] double chi2_critical_value(double alpha, int df);

struct SymmetryTestRow {
    std::string test;  ///< "halfspace" or "cone"
    int index = 0;
    double estimate = 0.0;  ///< Pr[Y in H], or Pr[Y in C] for cones
    double reference = 0.0;  ///< 1/2, or Pr[-Y in C] for cones
    double std_error = 0.0;  ///< SE of estimate - reference
    double z = 0.0;
    bool pass = false;
};

struct SymmetryBattery {
    std::vector<SymmetryTestRow> rows;
    double critical_z = 0.0;
    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] int failures() const;
};

/// Random central-halfspace and rotated-orthant cone battery at two-sided level alpha.
[[nodiscard]] SymmetryBattery run_symmetry_battery(const SymmetrySampler& s, int halfspaces, int cones,
                                                   std::uint64_t n, const SeedSpec& seed, double alpha = 1e-3,
                                                   unsigned workers = 1);

/// Orthant-cell goodness of fit for the direction of Y, plus the radius
/// certificate that separates directional symmetry from symmetry.
struct DirectionFit {
    double chi2_stat = 0.0;
    int df = 0;
    double critical = 0.0;
    bool uniform_ok = false;
    std::uint64_t radius_two_on_positive_side = 0;  ///< draws with y_1 > 0 and ||Y|| = 2
    std::uint64_t positive_side = 0;
};

[[nodiscard]] DirectionFit direction_goodness_of_fit(const SymmetrySampler& s, std::uint64_t n, const SeedSpec& seed,
                                                     double alpha = 1e-3, unsigned workers = 1);

}  // namespace steinfx
