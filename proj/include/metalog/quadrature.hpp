#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

#include "metalog/metalog.hpp"

namespace metalog::quadrature {

struct IntegrationResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Thrown when the requested tolerance is not met within the evaluation budget.
/// The best available estimate is attached.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, IntegrationResult best)
        : std::runtime_error(what), best_(best) {}

    const IntegrationResult& best() const { return best_; }

private:
    IntegrationResult best_;
};

inline constexpr std::size_t kDefaultEvaluationBudget = 1'000'000;

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [lo, hi] within (0, 1).
///
/// The integrand is never evaluated at 0 or 1. A segment touching 0 is integrated
/// under p = u^2 and a segment touching 1 under p = 1 - u^2, which flattens the
/// logarithmic endpoint singularities of the metalog basis. When both endpoints are
/// open the range is split at 1/2.
IntegrationResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            double tol, std::size_t max_evaluations = kDefaultEvaluationBudget);

/// As above, with the range additionally split at each breakpoint inside (lo, hi).
/// Gauss-Kronrod nodes never sit on a segment boundary, so a kink within a few
/// thousandths of a boundary goes unseen by the error estimate; callers that know
/// where the integrand is not smooth should pass those points here.
IntegrationResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            std::span<const double> breakpoints, double tol,
                            std::size_t max_evaluations = kDefaultEvaluationBudget);

/// (1 / (1 - alpha)) * integral_alpha^1 M_n(p, a) dp, by quadrature only.
double cvar_numeric(const MetalogCoefficients& c, ProbLevel alpha, double tol);

/// integral_0^1 M_n(p, a) dp, by quadrature only.
double mean_numeric(const MetalogCoefficients& c, double tol);

}  // namespace metalog::quadrature
