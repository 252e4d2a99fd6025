#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "metalog/metalog.hpp"

namespace metalog::risk {

/// Highest confidence level accepted by cvar(). Beyond it the 1/(1 - alpha) factor
/// magnifies cancellation in the tail terms past usable precision.
inline constexpr double kMaxCvarLevel = 1.0 - 1e-9;

/// Within this distance of 1/2 the second part of each even-index CVaR term is dropped;
/// its magnitude is bounded by |alpha - 1/2|^{k+1} times an O(1) bracket.
inline constexpr double kHalfLevelCutoff = 1e-8;

struct CVaRBreakdown {
    double total = 0.0;
    std::vector<double> per_term;  ///< contribution of a_j to the superquantile, j = 1..n
};

/// Closed-form superquantile of the metalog at confidence level alpha, term by term.
/// Throws std::domain_error for alpha > kMaxCvarLevel.
CVaRBreakdown cvar(const MetalogCoefficients& c, ProbLevel alpha);

/// Contribution of basis term j with unit coefficient to the superquantile.
double cvar_term(std::size_t j, ProbLevel alpha);

/// integral_alpha^1 g_j(p) dp in closed form; finite for every alpha in (0, 1).
double tail_integral_term(std::size_t j, ProbLevel alpha);

/// integral_alpha^1 M_n(p, a) dp = (1 - alpha) * superquantile.
double tail_integral(const MetalogCoefficients& c, ProbLevel alpha);

/// Simplified superquantile for six-term metalogs. Throws std::invalid_argument unless n = 6.
double cvar6_corollary(const MetalogCoefficients& c, ProbLevel alpha);

/// E[X] from the alpha -> 0 limit of the tail integral of each term.
double mean(const MetalogCoefficients& c);

/// E[X] from direct closed-form integrals of each basis term over (0, 1).
/// Independent of the digamma path used by mean().
double mean_by_term_integrals(const MetalogCoefficients& c);

/// integral_0^1 g_j(p) dp as the alpha -> 0 limit of tail_integral_term.
double mean_limit_term(std::size_t j);

/// integral_0^1 g_j(p) dp from the finite-sum antiderivative of (p - 1/2)^k ln(p / (1 - p)).
double mean_integral_term(std::size_t j);

struct PartialMoments {
    double threshold = 0.0;
    double alpha_w = 0.5;  ///< P(X <= threshold)
    double upper = 0.0;    ///< E[max(X - w, 0)]
    double lower = 0.0;    ///< E[max(w - X, 0)]
};

/// First-order partial moments at threshold w from the superquantile at alpha_w = F(w).
/// Requires an increasing quantile function; propagates InfeasibleError from cdf().
PartialMoments partial_moments(const MetalogCoefficients& c, double w);

double upper_partial_moment(const MetalogCoefficients& c, double w);
double lower_partial_moment(const MetalogCoefficients& c, double w);

/// max(M_n(p, a) - w, 0)
double upper_quantile_fn(const MetalogCoefficients& c, double w, ProbLevel p);
/// max(w - M_n(p, a), 0)
double lower_quantile_fn(const MetalogCoefficients& c, double w, ProbLevel p);

struct RiskReport {
    std::vector<double> alpha;
    std::vector<double> var;
    std::vector<double> cvar;
    double mean = 0.0;
    std::vector<PartialMoments> partial_moments;
};

RiskReport risk_report(const MetalogCoefficients& c, std::span<const double> alphas,
                       std::span<const double> thresholds);

}  // namespace metalog::risk
