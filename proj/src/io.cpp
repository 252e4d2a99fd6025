#include "metalog/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace metalog::io {

namespace {

template <typename Range>
std::string real_array(const Range& values) {
    std::string out = "[";
    bool first = true;
    for (double v : values) {
        if (!first) out += ',';
        out += format_real(v);
        first = false;
    }
    return out + "]";
}

std::string_view trim(std::string_view s) {
    const auto is_space = [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view field, std::size_t line, const char* name) {
    const std::string text(trim(field));
    if (text.empty()) throw ParseError(std::string("empty ") + name + " field", line);
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ParseError(std::string("cannot parse ") + name + " value '" + text + "'", line);
    }
    return v;
}

}  // namespace

std::string format_real(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string coefficients_to_json(const MetalogCoefficients& c) {
    return "{\"n\":" + std::to_string(c.size()) + ",\"a\":" + real_array(c.values()) + "}";
}

MetalogCoefficients coefficients_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid coefficient JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("a") || !doc["a"].is_array()) {
        throw ParseError("coefficient JSON must be an object with an \"a\" array");
    }
    std::vector<double> a;
    for (const auto& v : doc["a"]) {
        if (!v.is_number()) throw ParseError("coefficient array must contain only numbers");
        a.push_back(v.get<double>());
    }
    if (doc.contains("n")) {
        if (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(a.size())) {
            throw ParseError("\"n\" does not match the length of \"a\"");
        }
    }
    try {
        return MetalogCoefficients(std::move(a));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string fit_result_to_json(const fitting::FitResult& result) {
    const auto& c = result.coefficients;
    std::string out = "{\"n\":" + std::to_string(c.size()) + ",\"a\":" + real_array(c.values());
    out += ",\"residual_norm\":" + format_real(result.residual_norm);
    out += ",\"feasible\":" + std::string(result.feasible ? "true" : "false");
    out += ",\"condition_warning\":" + std::string(result.condition_warning ? "true" : "false");
    return out + "}";
}

std::string risk_report_to_json(const risk::RiskReport& report,
                                std::optional<std::span<const double>> oracle_abs_diff) {
    std::string out = "{\"alpha\":" + real_array(report.alpha);
    out += ",\"var\":" + real_array(report.var);
    out += ",\"cvar\":" + real_array(report.cvar);
    out += ",\"mean\":" + format_real(report.mean);
    out += ",\"partial_moments\":[";
    for (std::size_t i = 0; i < report.partial_moments.size(); ++i) {
        const auto& pm = report.partial_moments[i];
        if (i) out += ',';
        out += "{\"w\":" + format_real(pm.threshold) + ",\"upper\":" + format_real(pm.upper) +
               ",\"lower\":" + format_real(pm.lower) + "}";
    }
    out += "]";
    if (oracle_abs_diff) out += ",\"oracle_abs_diff\":" + real_array(*oracle_abs_diff);
    return out + "}";
}

std::vector<fitting::QuantilePoint> read_quantile_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<fitting::QuantilePoint> points;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        if (!header_seen) {
            const auto comma = row.find(',');
            if (comma == std::string_view::npos || trim(row.substr(0, comma)) != "p" ||
                trim(row.substr(comma + 1)) != "x") {
                throw ParseError("expected header \"p,x\"", line_no);
            }
            header_seen = true;
            continue;
        }
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
            throw ParseError("expected exactly two comma-separated fields", line_no);
        }
        const double p = parse_real(row.substr(0, comma), line_no, "p");
        const double x = parse_real(row.substr(comma + 1), line_no, "x");
        if (!(p > 0.0 && p < 1.0)) throw ParseError("p must lie in (0, 1)", line_no);
        points.push_back({ProbLevel(p), x});
    }
    if (!header_seen) throw ParseError("empty CSV input");
    return points;
}

}  // namespace metalog::io
