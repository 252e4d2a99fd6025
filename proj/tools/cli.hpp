#pragma once

#include <iosfwd>

namespace metalog::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInputError = 1,      ///< usage error, unreadable or malformed input, failed precondition
    kInfeasible = 2,      ///< coefficients do not define an increasing quantile function
    kVerifyFailed = 3,    ///< --verify found a closed-form/quadrature gap above --tol
};

/// Runs the command line. "-" as --input/--coeffs reads from `in`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace metalog::cli
