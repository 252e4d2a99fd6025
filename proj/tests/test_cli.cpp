#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;
using metalog::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "metalog");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("metalog_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

const std::string kLogisticCsv = "p,x\n0.25,-1.0986122886681098\n0.75,1.0986122886681098\n";

}  // namespace

TEST_CASE("fit") {
    TempDir dir;
    const auto csv = dir.write("pts.csv", kLogisticCsv);
    const auto r = invoke({"fit", "--input", csv, "--n", "2"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["n"] == 2);
    CHECK(std::abs(doc["a"][0].get<double>()) < 1e-12);
    CHECK(doc["a"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(doc["feasible"] == true);
    CHECK(doc["condition_warning"] == false);

    SUBCASE("too few points") {
        const auto four = dir.write("four.csv", "p,x\n0.1,-2\n0.3,-1\n0.7,1\n0.9,2\n");
        const auto bad = invoke({"fit", "--input", four, "--n", "5"});
        CHECK(bad.code == 1);
        CHECK(bad.err.find("need at least n points") != std::string::npos);
    }
    SUBCASE("malformed CSV reports the line") {
        const auto broken = dir.write("broken.csv", "p,x\n0.2,-1\n0.5,oops\n");
        const auto bad = invoke({"fit", "--input", broken, "--n", "2"});
        CHECK(bad.code == 1);
        CHECK(bad.err.find("line 3") != std::string::npos);
    }
    SUBCASE("strict feasibility") {
        // Samples of an infeasible 3-term metalog.
        const auto infeasible = dir.write("inf.csv", "p,x\n0.1,1.0986122886681098\n0.4,0.020273255405408197\n0.6,0.10136627702704104\n0.9,1.5380572041353537\n");
        CHECK(invoke({"fit", "--input", infeasible, "--n", "3"}).code == 0);
        CHECK(invoke({"fit", "--input", infeasible, "--n", "3", "--strict-feasible"}).code == 2);
    }
    SUBCASE("stdin and output file") {
        const auto out_path = dir.path("fit.json");
        const auto piped = invoke({"fit", "--input", "-", "--n", "2", "--output", out_path}, kLogisticCsv);
        CHECK(piped.code == 0);
        CHECK(piped.out.empty());
        std::ifstream written(out_path);
        std::string text((std::istreambuf_iterator<char>(written)), std::istreambuf_iterator<char>());
        CHECK(text == r.out);
    }
    SUBCASE("missing file") {
        CHECK(invoke({"fit", "--input", dir.path("nope.csv"), "--n", "2"}).code == 1);
    }
}

TEST_CASE("risk") {
    const std::string logistic = R"({"n":2,"a":[0,1]})";
    const auto r = invoke({"risk", "--coeffs", "-", "--alpha", "0.5", "--threshold", "0"}, logistic);
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["cvar"][0].get<double>() == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-15));
    CHECK(doc["partial_moments"][0]["upper"].get<double>() == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
    CHECK(doc["partial_moments"][0]["lower"].get<double>() == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
    CHECK_FALSE(doc.contains("oracle_abs_diff"));
    // Fixed key order.
    CHECK(r.out.rfind(R"({"alpha":[0.5],"var":[0],"cvar":[1.3862943611198906],"mean":0,"partial_moments":[{"w":0,)", 0) == 0);

    SUBCASE("deterministic output") {
        CHECK(invoke({"risk", "--coeffs", "-", "--alpha", "0.5", "--threshold", "0"}, logistic).out == r.out);
    }
    SUBCASE("verify against quadrature") {
        const std::string m6 = R"({"n":6,"a":[1.2,0.8,0.3,-0.1,0.05,0.02]})";
        const auto v = invoke({"risk", "--coeffs", "-", "--alpha", "0.9", "--alpha", "0.1", "--verify"}, m6);
        CHECK(v.code == 0);
        const auto vdoc = nlohmann::json::parse(v.out);
        REQUIRE(vdoc["oracle_abs_diff"].size() == 2);
        CHECK(vdoc["oracle_abs_diff"][0].get<double>() < 1e-8);
        CHECK(vdoc["oracle_abs_diff"][1].get<double>() < 1e-8);
    }
    SUBCASE("verify failure exit code") {
        // An unreachable tolerance turns any roundoff into a failure.
        const std::string m6 = R"({"n":6,"a":[1.2,0.8,0.3,-0.1,0.05,0.02]})";
        const auto v = invoke({"risk", "--coeffs", "-", "--alpha", "0.9", "--verify", "--tol", "1e-300"}, m6);
        CHECK(v.code == 3);
    }
    SUBCASE("infeasible coefficients") {
        const std::string bad = R"({"n":2,"a":[0,-1]})";
        CHECK(invoke({"risk", "--coeffs", "-", "--alpha", "0.5"}, bad).code == 2);
        const auto unsafe = invoke({"risk", "--coeffs", "-", "--alpha", "0.5", "--unsafe"}, bad);
        CHECK(unsafe.code == 0);
        CHECK(nlohmann::json::parse(unsafe.out)["cvar"][0].get<double>() ==
              doctest::Approx(-2.0 * std::numbers::ln2));
        // Partial moments still need an increasing quantile function.
        CHECK(invoke({"risk", "--coeffs", "-", "--alpha", "0.5", "--unsafe", "--threshold", "0"}, bad).code == 2);
    }
    SUBCASE("usage errors") {
        CHECK(invoke({"risk", "--coeffs", "-"}, logistic).code == 1);
        CHECK(invoke({"risk", "--coeffs", "-", "--alpha", "1.5"}, logistic).code == 1);
        CHECK(invoke({"risk", "--coeffs", "-", "--alpha", "0.5"}, "{").code == 1);
        CHECK(invoke({}).code == 1);
        CHECK(invoke({"bogus"}).code == 1);
        CHECK(invoke({"--help"}).code == 0);
    }
}

TEST_CASE("check") {
    auto logistic = invoke({"check", "--coeffs", "-"}, R"({"n":2,"a":[0,1]})");
    CHECK(logistic.code == 0);
    CHECK(nlohmann::json::parse(logistic.out)["feasible"] == true);

    auto decreasing = invoke({"check", "--coeffs", "-"}, R"({"n":2,"a":[0,-1]})");
    CHECK(decreasing.code == 2);
    const auto doc = nlohmann::json::parse(decreasing.out);
    CHECK(doc["feasible"] == false);
    CHECK(doc["min_density"].get<double>() < 0.0);

    auto six = invoke({"check", "--coeffs", "-"}, R"({"n":6,"a":[0.3,1.1,0.2,-0.15,0.05,0.03]})");
    CHECK(six.code == 0);
    CHECK(nlohmann::json::parse(six.out)["corollary_max_abs_diff"].get<double>() < 1e-10);

    CHECK(invoke({"check", "--coeffs", "-"}, "[]").code == 1);
}

TEST_CASE("eval") {
    const std::string logistic = R"({"n":2,"a":[0,1]})";
    const auto r = invoke({"eval", "--coeffs", "-", "--alpha", "0.5", "--alpha", "0.75"}, logistic);
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["quantile"][1].get<double>() == doctest::Approx(std::log(3.0)));
    CHECK(doc["pdf"][0].get<double>() == doctest::Approx(0.25));

    const auto cols = invoke({"eval", "--coeffs", "-", "--grid", "3", "--columns"}, logistic);
    CHECK(cols.code == 0);
    CHECK(cols.out == "# p x pdf\n0.25 -1.0986122886681098 0.1875\n0.5 0 0.25\n0.75 1.0986122886681098 0.1875\n");
    CHECK(invoke({"eval", "--coeffs", "-"}, logistic).code == 1);
}
