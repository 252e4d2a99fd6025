#include "metalog/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "metalog/detail/ipow.hpp"
#include "metalog/special_functions.hpp"

namespace metalog::risk {

using detail::ipow;

namespace {

void check_index(std::size_t j) {
    if (j == 0 || j > kMaxTerms) throw std::invalid_argument("basis index out of range");
}

// Psi(1 + k/2) + gamma + 2 ln 2
double digamma_shifted(int k) {
    return special::digamma_half_int(special::HalfIntArg(2 + k)) + special::kEulerGamma +
           2.0 * std::numbers::ln2;
}

// integral_{alpha-1/2}^{1/2} r^k ln((1+2r)/(1-2r)) dr for j = 2k + 2 >= 6.
double even_tail(int k, double alpha) {
    const double kp1 = k + 1.0;
    const double upper = ipow(0.5, k + 1) / kp1 * digamma_shifted(k);
    const double r = alpha - 0.5;
    if (std::abs(r) < kHalfLevelCutoff) return upper;
    const double bracket = special::hyp2f1_special(k, 1.0 - 2.0 * alpha) -
                           special::hyp2f1_special(k, 2.0 * alpha - 1.0) +
                           kp1 * std::log(alpha / (1.0 - alpha));
    return upper - ipow(r, k + 1) / (kp1 * kp1) * bracket;
}

// integral_{alpha-1/2}^{1/2} r^m dr scaled as in the odd-index term, m = (j-1)/2.
double odd_tail(std::size_t j, double alpha) {
    const int e = static_cast<int>((j + 1) / 2);
    return 2.0 / (j + 1.0) * (ipow(0.5, e) - ipow(alpha - 0.5, e));
}

}  // namespace

double cvar_term(std::size_t j, ProbLevel level) {
    check_index(j);
    const double alpha = level;
    const double tail = 1.0 - alpha;
    switch (j) {
        case 1: return 1.0;
        case 2: return -(std::log(tail) + alpha / tail * std::log(alpha));
        case 3: return 0.5 * (alpha * std::log(alpha / tail) + 1.0);
        case 4: return 0.5 * alpha;
        default: break;
    }
    if (j % 2 == 1) return odd_tail(j, alpha) / tail;
    return even_tail(static_cast<int>(j / 2 - 1), alpha) / tail;
}

double tail_integral_term(std::size_t j, ProbLevel level) {
    check_index(j);
    const double alpha = level;
    const double tail = 1.0 - alpha;
    switch (j) {
        case 1: return tail;
        case 2: return -(tail * std::log(tail) + alpha * std::log(alpha));
        case 3: return 0.5 * tail * (alpha * std::log(alpha / tail) + 1.0);
        case 4: return 0.5 * alpha * tail;
        default: break;
    }
    if (j % 2 == 1) return odd_tail(j, alpha);
    return even_tail(static_cast<int>(j / 2 - 1), alpha);
}

CVaRBreakdown cvar(const MetalogCoefficients& c, ProbLevel alpha) {
    if (alpha.value() > kMaxCvarLevel) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "cvar: confidence level " << alpha.value() << " exceeds " << kMaxCvarLevel;
        throw std::domain_error(msg.str());
    }
    CVaRBreakdown out;
    out.per_term.reserve(c.size());
    for (std::size_t j = 1; j <= c.size(); ++j) {
        out.per_term.push_back(c.coefficient(j) * cvar_term(j, alpha));
        out.total += out.per_term.back();
    }
    return out;
}

double tail_integral(const MetalogCoefficients& c, ProbLevel alpha) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= c.size(); ++j) sum += c.coefficient(j) * tail_integral_term(j, alpha);
    return sum;
}

double cvar6_corollary(const MetalogCoefficients& c, ProbLevel level) {
    if (c.size() != 6) {
        throw std::invalid_argument("cvar6_corollary: needs exactly 6 coefficients, got " +
                                    std::to_string(c.size()));
    }
    const double alpha = level;
    const double base = cvar(c.truncated(5), level).total;
    const double poly = alpha * alpha / 3.0 - alpha / 2.0 + 0.25;
    const double inner = alpha * (poly * std::log(alpha / (1.0 - alpha)) + (alpha - 1.0) / 6.0) +
                         std::log1p(-alpha) / 12.0;
    return base - c.coefficient(6) / (1.0 - alpha) * inner;
}

double mean_limit_term(std::size_t j) {
    check_index(j);
    switch (j) {
        case 1: return 1.0;
        case 2: return 0.0;
        case 3: return 0.5;
        case 4: return 0.0;
        default: break;
    }
    if (j % 2 == 1) {
        const int e = static_cast<int>((j + 1) / 2);
        return 2.0 / (j + 1.0) * (ipow(0.5, e) - ipow(-0.5, e));
    }
    // The bracket is odd in r, so its value at r = -1/2 is minus the value at r = +1/2.
    const int k = static_cast<int>(j / 2 - 1);
    const double kp1 = k + 1.0;
    const double limit_bracket = -special::bracket_at_half(k);
    return ipow(0.5, k + 1) / kp1 * digamma_shifted(k) -
           ipow(-0.5, k + 1) / (kp1 * kp1) * limit_bracket;
}

double mean_integral_term(std::size_t j) {
    check_index(j);
    if (j == 1) return 1.0;
    if (j == 2 || j == 4) return 0.0;
    if (j % 2 == 1 && j >= 5) {
        // integral_0^1 (p - 1/2)^m dp vanishes for odd m.
        const int m = static_cast<int>((j - 1) / 2);
        return m % 2 == 1 ? 0.0 : ipow(0.5, m) / (m + 1.0);
    }
    // j = 3 is the k = 1 member of the (p - 1/2)^k ln(p/(1-p)) family.
    const int k = j == 3 ? 1 : static_cast<int>(j / 2 - 1);
    if (k % 2 == 0) return 0.0;
    // integral_0^1 (p - 1/2)^k ln p dp = -(-1)^k / ((k+1) 2^k) * sum_{i<=k/2} 1/(2i+1),
    // and the ln(1-p) part mirrors it with the factor (-1)^k.
    double odd_harmonic = 0.0;
    for (int i = k / 2; i >= 0; --i) odd_harmonic += 1.0 / (2.0 * i + 1.0);
    return 2.0 * ipow(0.5, k) / (k + 1.0) * odd_harmonic;
}

double mean(const MetalogCoefficients& c) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= c.size(); ++j) sum += c.coefficient(j) * mean_limit_term(j);
    return sum;
}

double mean_by_term_integrals(const MetalogCoefficients& c) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= c.size(); ++j) sum += c.coefficient(j) * mean_integral_term(j);
    return sum;
}

PartialMoments partial_moments(const MetalogCoefficients& c, double w) {
    const ProbLevel alpha_w = cdf(c, w);
    const double tail = tail_integral(c, alpha_w);
    PartialMoments pm;
    pm.threshold = w;
    pm.alpha_w = alpha_w;
    // Analytically non-negative; clamp floating-point undershoot.
    pm.upper = std::max(0.0, tail - (1.0 - alpha_w) * w);
    pm.lower = std::max(0.0, w * alpha_w - mean(c) + tail);
    return pm;
}

double upper_partial_moment(const MetalogCoefficients& c, double w) {
    return partial_moments(c, w).upper;
}

double lower_partial_moment(const MetalogCoefficients& c, double w) {
    return partial_moments(c, w).lower;
}

double upper_quantile_fn(const MetalogCoefficients& c, double w, ProbLevel p) {
    return std::max(quantile(c, p) - w, 0.0);
}

double lower_quantile_fn(const MetalogCoefficients& c, double w, ProbLevel p) {
    return std::max(w - quantile(c, p), 0.0);
}

RiskReport risk_report(const MetalogCoefficients& c, std::span<const double> alphas,
                       std::span<const double> thresholds) {
    RiskReport report;
    for (double a : alphas) {
        const ProbLevel alpha(a);
        report.alpha.push_back(a);
        report.var.push_back(quantile(c, alpha));
        report.cvar.push_back(cvar(c, alpha).total);
    }
    report.mean = mean(c);
    for (double w : thresholds) report.partial_moments.push_back(partial_moments(c, w));
    return report;
}

}  // namespace metalog::risk
