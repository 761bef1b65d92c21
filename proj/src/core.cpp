#include "steinfx/core.hpp"

#include <algorithm>
#include <string>

namespace steinfx {

Point Point::unit(std::size_t dim, std::size_t axis) {
    if (axis >= dim) {
        throw DomainError("Point::unit: axis out of range");
    }
    Point e(dim);
    e[axis] = 1.0;
    return e;
}

bool Point::all_finite() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](double v) { return std::isfinite(v); });
}

Point& Point::operator+=(const Point& other) {
    require_same_dim(*this, other, "Point::operator+=");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

Point& Point::operator-=(const Point& other) {
    require_same_dim(*this, other, "Point::operator-=");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

Point& Point::operator*=(double scale) noexcept {
    for (double& v : coords_) v *= scale;
    return *this;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator-(Point a) { return a *= -1.0; }
Point operator*(double scale, Point a) { return a *= scale; }

void require_same_dim(const Point& a, const Point& b, const char* where) {
    if (a.size() != b.size()) {
        throw DomainError(std::string(where) + ": dimension mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
    }
}

double dot(const Point& a, const Point& b) {
    require_same_dim(a, b, "dot");
    CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
    return s.value();
}

double squared_norm(const Point& a) noexcept {
    CompensatedSum s;
    for (double v : a.coords()) s.add(v * v);
    return s.value();
}

double norm(const Point& a) noexcept { return std::sqrt(squared_norm(a)); }

double squared_distance(const Point& a, const Point& b) {
    require_same_dim(a, b, "squared_distance");
    CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s.add(d * d);
    }
    return s.value();
}

void Problem::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("Problem: sigma must be positive and finite");
    }
    if (delta.size() == 0) {
        throw DomainError("Problem: dimension p must be >= 1");
    }
    if (!delta.all_finite()) {
        throw DomainError("Problem: delta has non-finite coordinates");
    }
    if (delta0) {
        require_same_dim(delta, *delta0, "Problem");
        if (!delta0->all_finite()) {
            throw DomainError("Problem: delta0 has non-finite coordinates");
        }
    }
}

MCResult MCResult::from(double estimate, double std_error, std::uint64_t n) {
    return MCResult{n, estimate, std_error, estimate - kZ95 * std_error, estimate + kZ95 * std_error};
}

MCResult MCResult::proportion(std::uint64_t successes, std::uint64_t n) {
    if (n == 0) {
        throw DomainError("MCResult::proportion: n must be >= 1");
    }
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    return from(p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n);
}

MCResult MCResult::mean(double sum, double sum_sq, std::uint64_t n) {
    if (n == 0) {
        throw DomainError("MCResult::mean: n must be >= 1");
    }
    const double dn = static_cast<double>(n);
    const double m = sum / dn;
    double var = 0.0;
    if (n > 1) {
        var = std::max(0.0, (sum_sq - sum * m) / (dn - 1.0));
    }
    return from(m, std::sqrt(var / dn), n);
}

}  // namespace steinfx
