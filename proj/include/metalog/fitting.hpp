#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "metalog/metalog.hpp"

namespace metalog::fitting {

/// Observed quantile: P(X <= x) = p.
struct QuantilePoint {
    ProbLevel p;
    double x;
};

struct FitResult {
    MetalogCoefficients coefficients;
    double residual_norm = 0.0;
    bool feasible = false;
    bool condition_warning = false;
    double condition_number = 0.0;
};

/// Condition numbers of the design matrix above this raise FitResult::condition_warning.
inline constexpr double kConditionWarning = 1e10;

/// Raised for inputs the fitter cannot use: too few points, repeated levels,
/// or a design matrix without full column rank.
class FitError : public std::invalid_argument {
public:
    explicit FitError(const std::string& what, std::size_t rank = 0)
        : std::invalid_argument(what), rank_(rank) {}

    /// Numerical rank for rank-deficient designs, 0 otherwise.
    std::size_t rank() const { return rank_; }

private:
    std::size_t rank_;
};

/// Least-squares metalog with n terms through the given quantile points, solved by
/// column-pivoted Householder QR. Infeasible solutions are returned with feasible = false.
FitResult fit(std::span<const QuantilePoint> points, std::size_t n);

}  // namespace metalog::fitting
