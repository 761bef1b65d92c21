#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace steinfx {

// Error taxonomy shared by every module.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised where a formula is genuinely singular (e.g. JS at x == delta0).
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when an iterative numerical method cannot reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A real vector in p-dimensional Euclidean space.
///
/// Carries X, delta, delta0, and every difference of them. Arithmetic
/// operators require equal lengths and throw DomainError otherwise.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
    Point(std::initializer_list<double> values) : coords_(values) {}
    explicit Point(std::vector<double> values) : coords_(std::move(values)) {}

    /// Unit vector e_axis in `dim` dimensions.
    static Point unit(std::size_t dim, std::size_t axis);

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }

    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] std::span<double> coords() noexcept { return coords_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return coords_; }

    [[nodiscard]] bool all_finite() const noexcept;

    Point& operator+=(const Point& other);
    Point& operator-=(const Point& other);
    Point& operator*=(double scale) noexcept;

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator-(Point a);
Point operator*(double scale, Point a);

/// Throws DomainError unless a and b have the same length.
void require_same_dim(const Point& a, const Point& b, const char* where);

[[nodiscard]] double dot(const Point& a, const Point& b);
[[nodiscard]] double squared_norm(const Point& a) noexcept;
[[nodiscard]] double norm(const Point& a) noexcept;
/// ||a - b||^2 without materialising the difference.
[[nodiscard]] double squared_distance(const Point& a, const Point& b);

/// Problem description: X ~ N_p(delta, sigma^2 I) with an optional fixed target.
struct Problem {
    double sigma = 1.0;
    Point delta;
    std::optional<Point> delta0;

    [[nodiscard]] std::size_t dim() const noexcept { return delta.size(); }
    /// Throws DomainError on any invariant violation.
    void validate() const;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    void add(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.comp_);
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Monte Carlo summary: estimate, standard error, normal-approximation 95% CI.
struct MCResult {
    std::uint64_t n = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;

    /// Frequency estimate with binomial standard error.
    static MCResult proportion(std::uint64_t successes, std::uint64_t n);
    /// Sample mean with SD/sqrt(n) standard error, from first two raw moments.
    static MCResult mean(double sum, double sum_sq, std::uint64_t n);
    static MCResult from(double estimate, double std_error, std::uint64_t n);
};

inline constexpr double kZ95 = 1.96;

}  // namespace steinfx
