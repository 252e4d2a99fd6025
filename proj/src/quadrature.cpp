#include "metalog/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace metalog::quadrature {

namespace {

// Kronrod 15-point abscissae on [-1, 1]; odd indices are the embedded Gauss 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467768170426,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

enum class Map { Plain, FromZero, ToOne };

struct Segment {
    double a;
    double b;
    Map map;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

constexpr double kLargestBelowOne = 1.0 - 0x1p-53;

class Integrand {
public:
    explicit Integrand(const std::function<double(double)>& f) : f_(f) {}

    double operator()(Map map, double u) {
        ++evaluations_;
        switch (map) {
            case Map::Plain: return f_(u);
            case Map::FromZero: {
                const double p = std::max(u * u, std::numeric_limits<double>::min());
                return f_(p) * 2.0 * u;
            }
            case Map::ToOne: {
                const double p = std::min(1.0 - u * u, kLargestBelowOne);
                return f_(p) * 2.0 * u;
            }
        }
        return 0.0;
    }

    std::size_t evaluations() const { return evaluations_; }

private:
    const std::function<double(double)>& f_;
    std::size_t evaluations_ = 0;
};

Segment gauss_kronrod(Integrand& g, double a, double b, Map map) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = g(map, center);
    double kronrod = f_center * kWgk[7];
    double gauss = f_center * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = g(map, center - dx) + g(map, center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return Segment{a, b, map, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

IntegrationResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            double tol, std::size_t max_evaluations) {
    return integrate(f, lo, hi, {}, tol, max_evaluations);
}

IntegrationResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            std::span<const double> breakpoints, double tol,
                            std::size_t max_evaluations) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw std::invalid_argument("integrate: need 0 <= lo < hi <= 1");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");

    std::vector<double> cuts{lo};
    for (double b : breakpoints) {
        if (b > lo && b < hi) cuts.push_back(b);
    }
    if (cuts.size() == 1 && lo == 0.0 && hi == 1.0) cuts.push_back(0.5);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Integrand g(f);
    std::priority_queue<Segment> pool;
    std::vector<Segment> settled;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (a == 0.0) {
            pool.push(gauss_kronrod(g, 0.0, std::sqrt(b), Map::FromZero));
        } else if (b == 1.0) {
            pool.push(gauss_kronrod(g, 0.0, std::sqrt(1.0 - a), Map::ToOne));
        } else {
            pool.push(gauss_kronrod(g, a, b, Map::Plain));
        }
    }

    auto totals = [&]() {
        IntegrationResult r;
        auto acc = [&r](const Segment& s) {
            r.value += s.value;
            r.abs_error_estimate += s.error;
        };
        for (const auto& s : settled) acc(s);
        auto copy = pool;
        while (!copy.empty()) {
            acc(copy.top());
            copy.pop();
        }
        r.evaluations = g.evaluations();
        return r;
    };

    double error_sum = 0.0;
    {
        auto copy = pool;
        while (!copy.empty()) {
            error_sum += copy.top().error;
            copy.pop();
        }
    }

    while (error_sum > tol) {
        if (pool.empty() || g.evaluations() + 30 > max_evaluations) {
            const IntegrationResult best = totals();
            std::ostringstream msg;
            msg.precision(3);
            msg << "integrate: tolerance " << tol << " not reached (error estimate "
                << best.abs_error_estimate << " after " << best.evaluations << " evaluations)";
            throw IntegrationError(msg.str(), best);
        }
        const Segment worst = pool.top();
        pool.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Cannot be refined further in double precision.
            settled.push_back(worst);
            continue;
        }
        const Segment left = gauss_kronrod(g, worst.a, mid, worst.map);
        const Segment right = gauss_kronrod(g, mid, worst.b, worst.map);
        error_sum += left.error + right.error - worst.error;
        pool.push(left);
        pool.push(right);
        // Guard against drift in the running sum.
        if (error_sum <= tol) {
            error_sum = totals().abs_error_estimate;
        }
    }
    return totals();
}

double cvar_numeric(const MetalogCoefficients& c, ProbLevel alpha, double tol) {
    const double tail = 1.0 - alpha.value();
    const auto result = integrate([&c](double p) { return quantile(c, ProbLevel(p)); },
                                  alpha.value(), 1.0, tol * tail);
    return result.value / tail;
}

double mean_numeric(const MetalogCoefficients& c, double tol) {
    return integrate([&c](double p) { return quantile(c, ProbLevel(p)); }, 0.0, 1.0, tol).value;
}

}  // namespace metalog::quadrature
