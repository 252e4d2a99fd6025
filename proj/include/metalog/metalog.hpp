#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace metalog {

/// Largest supported number of terms. Fitting becomes badly conditioned well before this.
inline constexpr std::size_t kMaxTerms = 32;

/// Probability strictly inside (0, 1).
class ProbLevel {
public:
    explicit ProbLevel(double p);

    double value() const { return p_; }
    operator double() const { return p_; }

private:
    double p_;
};

/// Coefficient vector (a_1, ..., a_n) of a metalog quantile function, 2 <= n <= kMaxTerms.
/// Feasibility is not enforced here; see is_feasible().
class MetalogCoefficients {
public:
    explicit MetalogCoefficients(std::vector<double> a);
    MetalogCoefficients(std::initializer_list<double> a)
        : MetalogCoefficients(std::vector<double>(a)) {}

    std::size_t size() const { return a_.size(); }
    /// One-based access matching the usual a_1..a_n numbering.
    double coefficient(std::size_t j) const { return a_.at(j - 1); }
    std::span<const double> values() const { return a_; }

    /// First m coefficients (2 <= m <= n).
    MetalogCoefficients truncated(std::size_t m) const;

    friend bool operator==(const MetalogCoefficients&, const MetalogCoefficients&) = default;

private:
    std::vector<double> a_;
};

/// Raised when a coefficient vector does not define an increasing quantile function
/// where one is required.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double p, double density)
        : std::runtime_error(what), p_(p), density_(density) {}

    double p() const { return p_; }
    double density() const { return density_; }

private:
    double p_;
    double density_;
};

/// Basis function g_j(p), j >= 1, so that M_n(p, a) = sum_j a_j g_j(p).
///   g_1 = 1, g_2 = L, g_3 = (p - 1/2) L, g_4 = p - 1/2,
///   odd j >= 5:  (p - 1/2)^{(j-1)/2},
///   even j >= 6: (p - 1/2)^{j/2-1} L,
/// with L = ln(p / (1 - p)).
double basis_term(std::size_t j, ProbLevel p);

/// Derivative dg_j/dp.
double basis_term_derivative(std::size_t j, ProbLevel p);

/// M_n(p, a).
double quantile(const MetalogCoefficients& c, ProbLevel p);

/// dM_n/dp; its reciprocal is the density at x = M_n(p, a).
double quantile_density(const MetalogCoefficients& c, ProbLevel p);

/// Density at x = M_n(p, a). Throws InfeasibleError when the quantile density is not positive.
double pdf_at_level(const MetalogCoefficients& c, ProbLevel p);

/// CDF tails are clamped to [kCdfEpsilon, 1 - kCdfEpsilon].
inline constexpr double kCdfEpsilon = 1e-12;

/// Inverts the quantile function by bisection on the logit scale followed by a Newton
/// polish. Throws InfeasibleError if the quantile function is seen to decrease.
ProbLevel cdf(const MetalogCoefficients& c, double x);

struct FeasibilityReport {
    bool feasible = false;
    double argmin_p = 0.0;      ///< level at which the smallest quantile density was seen
    double min_density = 0.0;   ///< smallest quantile density on the grid
};

/// Scans the quantile density on grid_size Chebyshev points plus 1e-9 and 1 - 1e-9.
/// grid_size must be at least 100.
FeasibilityReport is_feasible(const MetalogCoefficients& c, std::size_t grid_size = 1000);

}  // namespace metalog
