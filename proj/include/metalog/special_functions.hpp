#pragma once

namespace metalog::special {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Argument of the form twice_value / 2, i.e. a positive integer or half-integer.
class HalfIntArg {
public:
    explicit HalfIntArg(int twice_value);

    static HalfIntArg integer(int m) { return HalfIntArg(2 * m); }

    int twice_value() const { return twice_; }
    bool is_integer() const { return twice_ % 2 == 0; }
    double value() const { return 0.5 * twice_; }

private:
    int twice_;
};

double euler_gamma();

/// Digamma at an integer or half-integer argument, evaluated as an exact finite sum:
///   psi(m)       = -gamma + sum_{j<m} 1/j
///   psi(m + 1/2) = -gamma - 2 ln 2 + 2 sum_{j<=m} 1/(2j-1)
double digamma_half_int(HalfIntArg x);

/// Gauss hypergeometric 2F1(1, k+1; k+2; z) for integer k >= 1 and -1 <= z < 1.
///
/// With n = k + 1 the function has the elementary form
///   -n z^{-n} [ln(1 - z) + sum_{m=1}^{n-1} z^m / m],
/// which is used only where |z|^n is not small. Elsewhere the power series
/// sum_j n / (n + j) z^j converges geometrically and is summed directly.
/// Throws std::domain_error for z >= 1 or z < -1, std::invalid_argument for k < 1.
double hyp2f1_special(int k, double z);

/// Finite value at r = 1/2 of
///   2F1(1,k+1;k+2;-2r) - 2F1(1,k+1;k+2;2r) + (k+1) ln((1+2r)/(1-2r)),
/// equal to (1+k) [psi(1 + k/2) + gamma + 2 ln 2]. Throws for k < 1.
double bracket_at_half(int k);

}  // namespace metalog::special
