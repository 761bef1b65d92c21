#include "steinfx/dist.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace steinfx {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

// lgamma(n + 1) - [(n + 1/2) ln n - n + ln sqrt(2 pi)], the Stirling remainder.
double stirlerr(double n) {
    if (n <= 15.0) {
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * std::numbers::pi);
    }
    const double nn = n * n;
    constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260, s3 = 1.0 / 1680, s4 = 1.0 / 1188;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x ln(x / m) + m - x without cancellation near x = m (Loader 2000).
double bd0(double x, double m) {
    if (std::fabs(x - m) < 0.1 * (x + m)) {
        double v = (x - m) / (x + m);
        double s = (x - m) * v;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / m) + m - x;
}

// m^k e^-m / Gamma(k + 1) for real k >= 0.
double poisson_density(double k, double m) {
    if (k == 0.0) return std::exp(-m);
    if (k < 10.0) return std::exp(k * std::log(m) - m - std::lgamma(k + 1.0));
    return std::exp(-stirlerr(k) - bd0(k, m)) / std::sqrt(2.0 * std::numbers::pi * k);
}

// x^s e^-x / Gamma(s), the common prefactor of P and Q.
double gamma_prefactor(double s, double x) { return s * poisson_density(s, x); }

double gamma_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) {
            return sum * gamma_prefactor(s, x);
        }
    }
    throw ConvergenceError("reg_inc_gamma: series did not converge");
}

// Modified Lentz evaluation of the continued fraction for Q(s, x).
double gamma_continued_fraction(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) {
            return h * gamma_prefactor(s, x);
        }
    }
    throw ConvergenceError("reg_inc_gamma: continued fraction did not converge");
}

void check_gamma_args(double s, double x) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw DomainError("reg_inc_gamma: s must be positive");
    }
    if (!(x >= 0.0)) {
        throw DomainError("reg_inc_gamma: x must be >= 0");
    }
}

// Lentz continued fraction for I_x(a, b); valid (fast) for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) {
            return h;
        }
    }
    throw ConvergenceError("reg_inc_beta: continued fraction did not converge");
}

double beta_front(double a, double b, double x) {
    return std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                    b * std::log1p(-x));
}

void check_beta_args(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("reg_inc_beta: a and b must be positive");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("reg_inc_beta: x must lie in [0, 1]");
    }
}

// I_x(a, b) for 0 < x < 1; callers choose the side where the fraction converges fast.
double beta_direct(double a, double b, double x) {
    return beta_front(a, b, x) * beta_continued_fraction(a, b, x) / a;
}

}  // namespace

void SeriesControl::validate() const {
    if (!(abs_tol > 0.0)) {
        throw DomainError("SeriesControl: abs_tol must be > 0");
    }
    if (max_terms < 1) {
        throw DomainError("SeriesControl: max_terms must be >= 1");
    }
}

PCQuery PCQuery::from_distance(int p, double distance, double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("PCQuery: sigma must be > 0");
    }
    if (!(distance >= 0.0)) {
        throw DomainError("PCQuery: distance must be >= 0");
    }
    const double r = distance / sigma;
    return PCQuery{p, r * r / 4.0};
}

void PCQuery::validate() const {
    if (p < 3) {
        throw DomainError("PCQuery: p must be >= 3");
    }
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
        throw DomainError("PCQuery: eta must be finite and >= 0");
    }
}

double reg_inc_gamma_lower(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return gamma_series(s, x);
    return 1.0 - gamma_continued_fraction(s, x);
}

double reg_inc_gamma_upper(double s, double x) {
    check_gamma_args(s, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return 1.0 - gamma_series(s, x);
    return gamma_continued_fraction(s, x);
}

double chi2_cdf(double x, int p) {
    if (p < 1) {
        throw DomainError("chi2_cdf: p must be >= 1");
    }
    return reg_inc_gamma_lower(0.5 * p, 0.5 * x);
}

double chi2_sf(double x, int p) {
    if (p < 1) {
        throw DomainError("chi2_sf: p must be >= 1");
    }
    return reg_inc_gamma_upper(0.5 * p, 0.5 * x);
}

double noncentral_chi2_sf(double x, int p, double eta, const SeriesControl& ctl) {
    ctl.validate();
    if (p < 1) {
        throw DomainError("noncentral_chi2_sf: p must be >= 1");
    }
    if (!(x >= 0.0)) {
        throw DomainError("noncentral_chi2_sf: x must be >= 0");
    }
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
        throw DomainError("noncentral_chi2_sf: eta must be finite and >= 0");
    }
    if (x == 0.0) return 1.0;
    if (eta == 0.0) return chi2_sf(x, p);

    const double lambda = 0.5 * eta;
    const double half_x = 0.5 * x;
    auto tail = [&](double k) { return reg_inc_gamma_upper(0.5 * p + k, half_x); };

    // Walk outward from the Poisson mode. Each side stops once a geometric
    // bound on its unvisited Poisson mass drops below half the tolerance;
    // since every chi-square tail is <= 1 that bounds the truncation error.
    const double budget = 0.5 * ctl.abs_tol;
    const auto mode = static_cast<std::uint64_t>(std::floor(lambda));
    CompensatedSum total;
    std::uint64_t terms = 0;
    auto charge = [&]() {
        if (++terms > ctl.max_terms) {
            throw ConvergenceError("noncentral_chi2_sf: max_terms (" + std::to_string(ctl.max_terms) +
                                   ") exhausted before reaching abs_tol");
        }
    };

    for (std::uint64_t k = mode;; ++k) {
        charge();
        const double kd = static_cast<double>(k);
        const double w = poisson_density(kd, lambda);
        total.add(w * tail(kd));
        const double next_w = w * lambda / (kd + 1.0);
        const double ratio = lambda / (kd + 2.0);
        if (ratio < 1.0 && next_w / (1.0 - ratio) < budget) break;
    }
    for (std::uint64_t k = mode; k-- > 0;) {
        charge();
        const double kd = static_cast<double>(k);
        const double w = poisson_density(kd, lambda);
        total.add(w * tail(kd));
        if (k == 0) break;
        const double prev_w = w * kd / lambda;
        const double ratio = (kd - 1.0) / lambda;
        if (prev_w / (1.0 - ratio) < budget) break;
    }
    const double v = total.value();
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double pc_exact_js(const PCQuery& q, const SeriesControl& ctl) {
    q.validate();
    return noncentral_chi2_sf(q.eta + 0.5 * (q.p - 2), q.p, q.eta, ctl);
}

double reg_inc_beta(double a, double b, double x) {
    check_beta_args(a, b, x);
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x < (a + 1.0) / (a + b + 2.0)) return beta_direct(a, b, x);
    return 1.0 - beta_direct(b, a, 1.0 - x);
}

double reg_inc_beta_complement(double a, double b, double x) {
    check_beta_args(a, b, x);
    if (x == 0.0) return 1.0;
    if (x == 1.0) return 0.0;
    const double y = 1.0 - x;
    if (y < (b + 1.0) / (a + b + 2.0)) return beta_direct(b, a, y);
    return 1.0 - beta_direct(a, b, x);
}

double cap_measure(double t, int p) {
    if (p < 2) {
        throw DomainError("cap_measure: p must be >= 2");
    }
    if (std::isnan(t)) {
        throw DomainError("cap_measure: t is NaN");
    }
    if (t < 0.0) return 1.0 - cap_measure(-t, p);
    if (t == 0.0) return 0.5;
    if (t >= 1.0) return 0.0;
    // z_1^2 / ||z||^2 ~ Beta(1/2, (p - 1) / 2); the cap keeps the positive half.
    return 0.5 * reg_inc_beta_complement(0.5, 0.5 * (p - 1), t * t);
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace steinfx
