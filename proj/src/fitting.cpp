#include "metalog/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

namespace metalog::fitting {

FitResult fit(std::span<const QuantilePoint> points, std::size_t n) {
    if (n < 2 || n > kMaxTerms) {
        throw FitError("number of terms must lie in [2, " + std::to_string(kMaxTerms) + "]");
    }
    const std::size_t m = points.size();
    if (m < n) {
        throw FitError("need at least n points: got " + std::to_string(m) + " for n = " +
                       std::to_string(n));
    }
    std::vector<double> levels;
    levels.reserve(m);
    for (const auto& pt : points) levels.push_back(pt.p);
    std::sort(levels.begin(), levels.end());
    if (std::adjacent_find(levels.begin(), levels.end()) != levels.end()) {
        throw FitError("duplicate probability levels in quantile data");
    }

    Eigen::MatrixXd design(m, n);
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) design(i, j) = basis_term(j + 1, points[i].p);
        rhs(i) = points[i].x;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    const auto rank = static_cast<std::size_t>(qr.rank());
    if (rank < n) {
        throw FitError("design matrix is rank deficient (numerical rank " + std::to_string(rank) +
                           " < " + std::to_string(n) + ")",
                       rank);
    }
    const Eigen::VectorXd solution = qr.solve(rhs);

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
    const auto& sv = svd.singularValues();
    const double condition = sv(0) / sv(sv.size() - 1);

    FitResult result{MetalogCoefficients(std::vector<double>(solution.data(), solution.data() + n))};
    result.residual_norm = (design * solution - rhs).norm();
    result.feasible = is_feasible(result.coefficients).feasible;
    result.condition_number = condition;
    result.condition_warning = !(condition <= kConditionWarning);
    return result;
}

}  // namespace metalog::fitting
