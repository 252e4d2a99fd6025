#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "metalog/fitting.hpp"
#include "metalog/io.hpp"
#include "metalog/metalog.hpp"
#include "metalog/quadrature.hpp"
#include "metalog/risk_measures.hpp"

namespace metalog::cli {

namespace {

struct Options {
    std::string input;
    std::string coeffs;
    std::string output;
    int n = 0;
    std::vector<double> alphas;
    std::vector<double> thresholds;
    double tol = 1e-8;
    int grid = 0;
    bool strict_feasible = false;
    bool unsafe = false;
    bool verify = false;
    bool columns = false;
};

class InputError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path);
    if (!file) throw InputError("cannot open '" + path + "'");
    buf << file.rdbuf();
    return buf.str();
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
    if (opt.output.empty() || opt.output == "-") {
        out << text << '\n';
        return;
    }
    std::ofstream file(opt.output);
    if (!file) throw InputError("cannot write '" + opt.output + "'");
    file << text << '\n';
}

int cmd_fit(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
    std::istringstream csv(slurp(opt.input, in));
    const auto points = io::read_quantile_csv(csv);
    const auto result = fitting::fit(points, static_cast<std::size_t>(opt.n));
    emit(opt, out, io::fit_result_to_json(result));
    if (result.condition_warning) {
        err << "warning: design matrix condition number " << result.condition_number << '\n';
    }
    if (!result.feasible && opt.strict_feasible) {
        err << "error: fitted coefficients are not feasible\n";
        return kInfeasible;
    }
    return kOk;
}

std::vector<double> eval_levels(const Options& opt) {
    std::vector<double> levels = opt.alphas;
    for (int i = 1; i <= opt.grid; ++i) levels.push_back(static_cast<double>(i) / (opt.grid + 1));
    if (levels.empty()) throw InputError("eval needs --alpha or --grid");
    return levels;
}

int cmd_eval(const Options& opt, std::istream& in, std::ostream& out, std::ostream&) {
    const auto c = io::coefficients_from_json(slurp(opt.coeffs, in));
    const auto levels = eval_levels(opt);
    std::vector<double> x;
    std::vector<double> density;
    for (double p : levels) {
        const ProbLevel level(p);
        x.push_back(quantile(c, level));
        const double d = quantile_density(c, level);
        density.push_back(d > 0.0 ? 1.0 / d : std::nan(""));
    }
    std::string text;
    if (opt.columns) {
        text = "# p x pdf";
        for (std::size_t i = 0; i < levels.size(); ++i) {
            text += '\n' + io::format_real(levels[i]) + ' ' + io::format_real(x[i]) + ' ' +
                    (std::isnan(density[i]) ? std::string("nan") : io::format_real(density[i]));
        }
    } else {
        auto array = [](const std::vector<double>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + io::format_real(v[i]);
            return s + "]";
        };
        text = "{\"p\":" + array(levels) + ",\"quantile\":" + array(x) + ",\"pdf\":" +
               array(density) + "}";
    }
    emit(opt, out, text);
    return kOk;
}

int cmd_risk(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
    const auto c = io::coefficients_from_json(slurp(opt.coeffs, in));
    const auto feasibility = is_feasible(c);
    if (!feasibility.feasible && !opt.unsafe) {
        err << "error: coefficients are not feasible (quantile density "
            << io::format_real(feasibility.min_density) << " at p = "
            << io::format_real(feasibility.argmin_p) << "); pass --unsafe to override\n";
        return kInfeasible;
    }
    const auto report = risk::risk_report(c, opt.alphas, opt.thresholds);
    if (!opt.verify) {
        emit(opt, out, io::risk_report_to_json(report));
        return kOk;
    }
    const double integration_tol = std::max(opt.tol * 1e-3, 1e-13);
    std::vector<double> diffs;
    for (std::size_t i = 0; i < report.alpha.size(); ++i) {
        const double numeric =
            quadrature::cvar_numeric(c, ProbLevel(report.alpha[i]), integration_tol);
        diffs.push_back(std::abs(numeric - report.cvar[i]));
    }
    emit(opt, out, io::risk_report_to_json(report, diffs));
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (!(diffs[i] <= opt.tol)) {
            err << "error: closed-form and quadrature CVaR differ by " << io::format_real(diffs[i])
                << " at alpha = " << io::format_real(report.alpha[i]) << '\n';
            return kVerifyFailed;
        }
    }
    return kOk;
}

int cmd_check(const Options& opt, std::istream& in, std::ostream& out, std::ostream&) {
    const auto c = io::coefficients_from_json(slurp(opt.coeffs, in));
    const auto report = is_feasible(c);
    std::string text = "{\"feasible\":" + std::string(report.feasible ? "true" : "false") +
                       ",\"argmin_p\":" + io::format_real(report.argmin_p) +
                       ",\"min_density\":" + io::format_real(report.min_density);
    if (c.size() == 6) {
        double worst = 0.0;
        for (int i = 1; i <= 99; ++i) {
            const ProbLevel alpha(i / 100.0);
            worst = std::max(worst, std::abs(risk::cvar6_corollary(c, alpha) -
                                             risk::cvar(c, alpha).total));
        }
        text += ",\"corollary_max_abs_diff\":" + io::format_real(worst);
    }
    emit(opt, out, text + "}");
    return report.feasible ? kOk : kInfeasible;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Metalog distributions: fitting, quantiles and closed-form tail risk"};
    app.require_subcommand(1);
    Options opt;

    auto* fit = app.add_subcommand("fit", "Least-squares metalog fit from p,x quantile CSV");
    fit->add_option("--input", opt.input, "CSV file with header p,x ('-' for stdin)")->required();
    fit->add_option("--n", opt.n, "Number of metalog terms")->required()->check(CLI::Range(2, 32));
    fit->add_flag("--strict-feasible", opt.strict_feasible, "Exit 2 if the fit is infeasible");
    fit->add_option("--output", opt.output, "Output file (default stdout)");

    auto* eval = app.add_subcommand("eval", "Quantile and density at probability levels");
    eval->add_option("--coeffs", opt.coeffs, "Coefficient JSON ('-' for stdin)")->required();
    eval->add_option("--alpha", opt.alphas, "Probability level (repeatable)");
    eval->add_option("--grid", opt.grid, "Add N evenly spaced levels i/(N+1)")
        ->check(CLI::NonNegativeNumber);
    eval->add_flag("--columns", opt.columns, "Whitespace-separated columns instead of JSON");
    eval->add_option("--output", opt.output, "Output file (default stdout)");

    auto* risk = app.add_subcommand("risk", "VaR, CVaR, mean and partial moments as JSON");
    risk->add_option("--coeffs", opt.coeffs, "Coefficient JSON ('-' for stdin)")->required();
    risk->add_option("--alpha", opt.alphas, "Confidence level (repeatable)")->required();
    risk->add_option("--threshold", opt.thresholds, "Partial-moment threshold (repeatable)");
    risk->add_option("--tol", opt.tol, "Tolerance for --verify")->check(CLI::PositiveNumber);
    risk->add_flag("--unsafe", opt.unsafe, "Report even if coefficients are infeasible");
    risk->add_flag("--verify", opt.verify, "Compare each CVaR with adaptive quadrature");
    risk->add_option("--output", opt.output, "Output file (default stdout)");

    auto* check = app.add_subcommand("check", "Feasibility scan of a coefficient vector");
    check->add_option("--coeffs", opt.coeffs, "Coefficient JSON ('-' for stdin)")->required();
    check->add_option("--output", opt.output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (fit->parsed()) return cmd_fit(opt, in, out, err);
        if (eval->parsed()) return cmd_eval(opt, in, out, err);
        if (risk->parsed()) return cmd_risk(opt, in, out, err);
        return cmd_check(opt, in, out, err);
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace metalog::cli
