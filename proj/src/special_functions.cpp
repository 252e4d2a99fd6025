#include "metalog/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "metalog/detail/ipow.hpp"

namespace metalog::special {

HalfIntArg::HalfIntArg(int twice_value) : twice_(twice_value) {
    if (twice_value < 1) {
        throw std::invalid_argument("HalfIntArg: twice_value must be >= 1, got " +
                                    std::to_string(twice_value));
    }
}

double euler_gamma() { return kEulerGamma; }

double digamma_half_int(HalfIntArg x) {
    const int twice = x.twice_value();
    if (x.is_integer()) {
        const int m = twice / 2;
        double sum = 0.0;
        // Smallest terms first.
        for (int j = m - 1; j >= 1; --j) sum += 1.0 / j;
        return sum - kEulerGamma;
    }
    const int m = (twice - 1) / 2;
    double sum = 0.0;
    for (int j = m; j >= 1; --j) sum += 1.0 / (2.0 * j - 1.0);
    return 2.0 * sum - kEulerGamma - 2.0 * std::numbers::ln2;
}

namespace {

// sum_{j>=0} n/(n+j) z^j, stopped once the term drops below 1e-17 of the sum.
double hyp2f1_series(int n, double z) {
    double sum = 1.0;
    double zj = 1.0;
    for (int j = 1; j < 1'000'000; ++j) {
        zj *= z;
        const double term = static_cast<double>(n) / (n + j) * zj;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double hyp2f1_elementary(int n, double z) {
    double partial = 0.0;
    for (int m = n - 1; m >= 1; --m) partial += detail::ipow(z, m) / m;
    const double bracket = std::log1p(-z) + partial;
    return -n * bracket / detail::ipow(z, n);
}

}  // namespace

double hyp2f1_special(int k, double z) {
    if (k < 1) {
        throw std::invalid_argument("hyp2f1_special: k must be >= 1, got " + std::to_string(k));
    }
    if (!(z < 1.0) || z < -1.0) {
        throw std::domain_error("hyp2f1_special: z must lie in [-1, 1)");
    }
    const int n = k + 1;
    if (z == 0.0) return 1.0;
    // The elementary form cancels like |z|^n; below 1/2 the series is cheaper and exact.
    if (std::abs(detail::ipow(z, n)) >= 0.5) return hyp2f1_elementary(n, z);
    return hyp2f1_series(n, z);
}

double bracket_at_half(int k) {
    if (k < 1) {
        throw std::invalid_argument("bracket_at_half: k must be >= 1, got " + std::to_string(k));
    }
    const double psi = digamma_half_int(HalfIntArg(2 + k));
    return (1.0 + k) * (psi + kEulerGamma + 2.0 * std::numbers::ln2);
}

}  // namespace metalog::special
