#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "metalog/io.hpp"
#include "support/generators.hpp"

using namespace metalog;
using namespace metalog::io;

TEST_CASE("real formatting") {
    CHECK(format_real(0.0) == "0");
    CHECK(format_real(1.5) == "1.5");
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(std::nan("")) == "null");
    CHECK(format_real(INFINITY) == "null");
}

TEST_CASE("coefficient JSON round-trips bit-exactly") {
    testing::Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 32));
        std::vector<double> a(n);
        for (auto& v : a) v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.integer(-300, 300));
        const MetalogCoefficients c(a);
        const auto back = coefficients_from_json(coefficients_to_json(c));
        REQUIRE(back.size() == n);
        CHECK(std::memcmp(back.values().data(), c.values().data(), n * sizeof(double)) == 0);
    }
    CHECK(coefficients_to_json(MetalogCoefficients{0.0, 1.0}) == R"({"n":2,"a":[0,1]})");
}

TEST_CASE("coefficient JSON validation") {
    CHECK(coefficients_from_json(R"({"a":[1,2,3]})").size() == 3);
    CHECK_THROWS_AS(coefficients_from_json("not json"), ParseError);
    CHECK_THROWS_AS(coefficients_from_json(R"({"n":3,"a":[1,2]})"), ParseError);
    CHECK_THROWS_AS(coefficients_from_json(R"({"n":1,"a":[1]})"), ParseError);
    CHECK_THROWS_AS(coefficients_from_json(R"({"a":[1,"x"]})"), ParseError);
    CHECK_THROWS_AS(coefficients_from_json(R"([1,2])"), ParseError);
}

TEST_CASE("fit result and risk report layout") {
    fitting::FitResult r{MetalogCoefficients{0.0, 1.0}};
    r.residual_norm = 0.0;
    r.feasible = true;
    CHECK(fit_result_to_json(r) ==
          R"({"n":2,"a":[0,1],"residual_norm":0,"feasible":true,"condition_warning":false})");

    risk::RiskReport report;
    report.alpha = {0.5};
    report.var = {0.0};
    report.cvar = {1.5};
    report.mean = 0.25;
    report.partial_moments.push_back({0.0, 0.5, 0.75, 0.5});
    CHECK(risk_report_to_json(report) ==
          R"({"alpha":[0.5],"var":[0],"cvar":[1.5],"mean":0.25,"partial_moments":[{"w":0,"upper":0.75,"lower":0.5}]})");
    const std::vector<double> diffs{1e-12};
    CHECK(risk_report_to_json(report, diffs).ends_with(R"(,"oracle_abs_diff":[9.9999999999999998e-13]})"));
}

TEST_CASE("quantile CSV") {
    std::istringstream ok("p,x\n0.25,-1.0986\n\n 0.75 , 1.0986\r\n");
    const auto pts = read_quantile_csv(ok);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].p.value() == 0.25);
    CHECK(pts[1].x == 1.0986);

    auto error_line = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_quantile_csv(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(error_line("x,p\n0.5,1\n") == 1);
    CHECK(error_line("p,x\n0.5,1\n1.5,2\n") == 3);
    CHECK(error_line("p,x\n0.5,1\n0,2\n") == 3);
    CHECK(error_line("p,x\n0.5,abc\n") == 2);
    CHECK(error_line("p,x\n0.5\n") == 2);
    CHECK(error_line("p,x\n0.5,1,2\n") == 2);
    CHECK(error_line("p,x\n0,5,1\n") == 2);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_quantile_csv(empty), ParseError);
}
