#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "metalog/fitting.hpp"
#include "metalog/metalog.hpp"
#include "metalog/risk_measures.hpp"

namespace metalog::io {

/// Raised for malformed CSV or JSON input. line() is 1-based, or 0 when not applicable.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// 17 significant digits; NaN and infinities become null.
std::string format_real(double v);

/// {"n":<int>,"a":[...]}
std::string coefficients_to_json(const MetalogCoefficients& c);

/// Accepts any object with an "a" array; "n", when present, must match its length.
MetalogCoefficients coefficients_from_json(std::string_view text);

/// {"n":,"a":[...],"residual_norm":,"feasible":,"condition_warning":}
std::string fit_result_to_json(const fitting::FitResult& result);

/// {"alpha":[...],"var":[...],"cvar":[...],"mean":,"partial_moments":[{"w":,"upper":,"lower":}]}
/// followed by "oracle_abs_diff":[...] when supplied.
std::string risk_report_to_json(const risk::RiskReport& report,
                                std::optional<std::span<const double>> oracle_abs_diff = {});

/// Reads "p,x" CSV with a header row. Rejects p outside (0, 1).
std::vector<fitting::QuantilePoint> read_quantile_csv(std::istream& in);

}  // namespace metalog::io
