#include "metalog/metalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "metalog/detail/ipow.hpp"

namespace metalog {

using detail::ipow;

ProbLevel::ProbLevel(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "probability level must lie in (0, 1), got " << p;
        throw std::domain_error(msg.str());
    }
}

MetalogCoefficients::MetalogCoefficients(std::vector<double> a) : a_(std::move(a)) {
    if (a_.size() < 2 || a_.size() > kMaxTerms) {
        throw std::invalid_argument("metalog needs between 2 and " + std::to_string(kMaxTerms) +
                                    " coefficients, got " + std::to_string(a_.size()));
    }
    for (double v : a_) {
        if (!std::isfinite(v)) throw std::invalid_argument("metalog coefficients must be finite");
    }
}

MetalogCoefficients MetalogCoefficients::truncated(std::size_t m) const {
    if (m > a_.size()) throw std::invalid_argument("truncated: m exceeds number of terms");
    return MetalogCoefficients(std::vector<double>(a_.begin(), a_.begin() + m));
}

double basis_term(std::size_t j, ProbLevel level) {
    const double p = level;
    const double centered = p - 0.5;
    switch (j) {
        case 0: throw std::invalid_argument("basis_term: index starts at 1");
        case 1: return 1.0;
        case 2: return std::log(p / (1.0 - p));
        case 3: return centered * std::log(p / (1.0 - p));
        case 4: return centered;
        default: break;
    }
    if (j % 2 == 1) return ipow(centered, static_cast<int>((j - 1) / 2));
    return ipow(centered, static_cast<int>(j / 2 - 1)) * std::log(p / (1.0 - p));
}

double basis_term_derivative(std::size_t j, ProbLevel level) {
    const double p = level;
    const double centered = p - 0.5;
    const double inv_var = 1.0 / (p * (1.0 - p));
    switch (j) {
        case 0: throw std::invalid_argument("basis_term_derivative: index starts at 1");
        case 1: return 0.0;
        case 2: return inv_var;
        case 3: return std::log(p / (1.0 - p)) + centered * inv_var;
        case 4: return 1.0;
        default: break;
    }
    if (j % 2 == 1) {
        const int e = static_cast<int>((j - 1) / 2);
        return e * ipow(centered, e - 1);
    }
    const int e = static_cast<int>(j / 2 - 1);
    return e * ipow(centered, e - 1) * std::log(p / (1.0 - p)) + ipow(centered, e) * inv_var;
}

double quantile(const MetalogCoefficients& c, ProbLevel p) {
    double x = 0.0;
    for (std::size_t j = 1; j <= c.size(); ++j) x += c.coefficient(j) * basis_term(j, p);
    return x;
}

double quantile_density(const MetalogCoefficients& c, ProbLevel p) {
    double d = 0.0;
    for (std::size_t j = 2; j <= c.size(); ++j) d += c.coefficient(j) * basis_term_derivative(j, p);
    return d;
}

double pdf_at_level(const MetalogCoefficients& c, ProbLevel p) {
    const double d = quantile_density(c, p);
    if (!(d > 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "quantile density " << d << " is not positive at p = " << p.value();
        throw InfeasibleError(msg.str(), p, d);
    }
    return 1.0 / d;
}

namespace {

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

[[noreturn]] void throw_non_monotone(double p, double x) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quantile function is not increasing near p = " << p << " (searching for x = " << x
        << ")";
    throw InfeasibleError(msg.str(), p, 0.0);
}

}  // namespace

ProbLevel cdf(const MetalogCoefficients& c, double x) {
    const ProbLevel p_lo(kCdfEpsilon);
    const ProbLevel p_hi(1.0 - kCdfEpsilon);
    double f_lo = quantile(c, p_lo);
    double f_hi = quantile(c, p_hi);
    if (!(f_lo < f_hi)) throw_non_monotone(0.5, x);
    if (x <= f_lo) return p_lo;
    if (x >= f_hi) return p_hi;

    // Bisect on u = logit(p) so that tail levels keep relative precision.
    double u_lo = std::log(p_lo / (1.0 - p_lo));
    double u_hi = std::log(p_hi / (1.0 - p_hi));
    double u_mid = 0.5 * (u_lo + u_hi);
    for (int iter = 0; iter < 400; ++iter) {
        u_mid = 0.5 * (u_lo + u_hi);
        if (u_mid <= u_lo || u_mid >= u_hi) break;
        const double f_mid = quantile(c, ProbLevel(logistic(u_mid)));
        if (f_mid < f_lo || f_mid > f_hi) throw_non_monotone(logistic(u_mid), x);
        if (f_mid == x) return ProbLevel(logistic(u_mid));
        if (f_mid < x) {
            u_lo = u_mid;
            f_lo = f_mid;
        } else {
            u_hi = u_mid;
            f_hi = f_mid;
        }
        if (u_hi - u_lo <= 1e-15 * std::max(1.0, std::abs(u_mid))) break;
    }

    const double p_lo_final = logistic(u_lo);
    const double p_hi_final = logistic(u_hi);
    double p = logistic(0.5 * (u_lo + u_hi));
    const double residual = quantile(c, ProbLevel(p)) - x;
    const double slope = quantile_density(c, ProbLevel(p));
    if (slope > 0.0) {
        const double polished = p - residual / slope;
        if (polished > p_lo_final && polished < p_hi_final &&
            std::abs(quantile(c, ProbLevel(polished)) - x) < std::abs(residual)) {
            p = polished;
        }
    }
    return ProbLevel(p);
}

FeasibilityReport is_feasible(const MetalogCoefficients& c, std::size_t grid_size) {
    if (grid_size < 100) throw std::invalid_argument("is_feasible: grid_size must be >= 100");
    FeasibilityReport report;
    report.min_density = std::numeric_limits<double>::infinity();
    auto visit = [&](double p) {
        const double d = quantile_density(c, ProbLevel(p));
        if (d < report.min_density || std::isnan(d)) {
            report.min_density = d;
            report.argmin_p = p;
        }
    };
    visit(1e-9);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double theta = std::numbers::pi * (2.0 * i + 1.0) / (2.0 * grid_size);
        visit(0.5 * (1.0 - std::cos(theta)));
    }
    visit(1.0 - 1e-9);
    report.feasible = report.min_density > 0.0;
    return report;
}

}  // namespace metalog
