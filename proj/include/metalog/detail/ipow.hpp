#pragma once

namespace metalog::detail {

/// x^e for a non-negative integer exponent; exact sign for negative x.
constexpr double ipow(double x, int e) {
    double result = 1.0;
    while (e > 0) {
        if (e & 1) result *= x;
        x *= x;
        e >>= 1;
    }
    return result;
}

}  // namespace metalog::detail
