#include "qosa/analytic.hpp"

#include "qosa/contrast.hpp"
#include "qosa/error.hpp"
#include "qosa/estimator.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <vector>

namespace qosa::analytic {
namespace {

constexpr double kQuadratureTolerance = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_level(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("alpha must lie in (0, 1)");
    }
}

void check_error(double value, double error, double l1, const char* what) {
    if (!std::isfinite(value) || !(error <= 1e3 * kQuadratureTolerance * std::max(l1, 1.0))) {
        throw NumericalError(std::string("quadrature did not converge: ") + what);
    }
}

// Integral over [a, b], either end possibly infinite, split at the interior
// breakpoints where the integrand has a kink.
template <class F>
double integrate(const F& f, double a, double b, std::vector<double> breaks, const char* what) {
    std::vector<double> nodes{a};
    std::sort(breaks.begin(), breaks.end());
    for (double c : breaks) {
        if (c > nodes.back() && c < b) {
            nodes.push_back(c);
        }
    }
    nodes.push_back(b);
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
        const double lo = nodes[s];
        const double hi = nodes[s + 1];
        double err = 0.0;
        double l1 = 0.0;
        double part = 0.0;
        try {
            if (std::isinf(lo) || std::isinf(hi)) {
                boost::math::quadrature::exp_sinh<double> q;
                part = q.integrate(f, lo, hi, kQuadratureTolerance, &err, &l1);
            } else {
                boost::math::quadrature::tanh_sinh<double> q;
                part = q.integrate(f, lo, hi, kQuadratureTolerance, &err, &l1);
            }
        } catch (const std::exception& e) {
            throw NumericalError(std::string("quadrature failed: ") + what + ": " + e.what());
        }
        check_error(part, err, l1, what);
        total += part;
    }
    return total;
}

double cte_with_breaks(const std::function<double(double)>& quantile, double alpha, std::vector<double> breaks) {
    require_level(alpha);
    return integrate(quantile, alpha, 1.0, std::move(breaks), "CTE integral") / (1.0 - alpha);
}

// Y = E1 - E2 with E1, E2 ~ Exp(1) independent: the Laplace(0, 1) law.
double laplace_density(double y) { return 0.5 * std::exp(-std::abs(y)); }

double laplace_quantile(double u) { return u < 0.5 ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u)); }

// Conditional law of Y given X_i = x is x + sign * E with E ~ Exp(1):
// sign = -1 for X1 (Y = x - E2), +1 for X2 (Y = E1 + x).
struct Conditional {
    double sign;

    double quantile(double x, double u) const {
        return sign < 0.0 ? x + std::log(u) : x - std::log1p(-u);
    }

    // Integral over the conditioning variable against its density.
    template <class F>
    double expect(const F& g, const char* what) const {
        if (sign < 0.0) {
            // X1 ~ Exp(1) on (0, inf)
            return integrate([&](double x) { return std::exp(-x) * g(x); }, 0.0, kInf, {}, what);
        }
        // X2 ~ -Exp(1) on (-inf, 0)
        return integrate([&](double x) { return std::exp(x) * g(x); }, -kInf, 0.0, {}, what);
    }
};

} // namespace

AlphaBranch AlphaBranch::of(double alpha) {
    require_level(alpha);
    return {alpha, alpha >= 0.5 ? Branch::High : Branch::Low};
}

namespace {

double branch_denominator(const AlphaBranch& ab) {
    const double a = ab.alpha;
    return ab.branch == Branch::High ? (1.0 - a) * (1.0 - std::log(2.0 * (1.0 - a))) : a * (1.0 - std::log(2.0 * a));
}

} // namespace

double analytic_s_x1(double alpha) {
    const AlphaBranch ab = AlphaBranch::of(alpha);
    const double d = branch_denominator(ab);
    return (d + alpha * std::log(alpha)) / d;
}

double analytic_s_x2(double alpha) {
    const AlphaBranch ab = AlphaBranch::of(alpha);
    const double d = branch_denominator(ab);
    return (d + (1.0 - alpha) * std::log1p(-alpha)) / d;
}

double exponential_cte(double alpha) {
    require_level(alpha);
    return 1.0 - std::log1p(-alpha);
}

double quadrature_cte(const std::function<double(double)>& quantile, double alpha) {
    return cte_with_breaks(quantile, alpha, {});
}

IdentityCheck verify_cte_identity(double alpha, std::size_t input) {
    require_level(alpha);
    if (input != 1 && input != 2) {
        throw InvalidArgument("the additive model has inputs 1 and 2");
    }
    const Conditional cond{input == 1 ? -1.0 : 1.0};
    const ContrastKind psi = ContrastKind::quantile(alpha);

    // Contrast side: S = (min E psi - E min E[psi | X_i]) / min E psi.
    auto risk = [&](double theta) {
        return integrate([&](double y) { return contrast_eval(psi, y, theta) * laplace_density(y); }, -kInf, kInf,
                         {0.0, theta}, "unconditional contrast risk");
    };
    const auto best = boost::math::tools::brent_find_minima(risk, -50.0, 50.0, std::numeric_limits<double>::digits / 2);
    const double min_risk = best.second;

    // E[psi(Y; theta) | X_i = x] at theta = F^{-1}_{Y|X_i=x}(alpha).
    const double kink = cond.sign < 0.0 ? -std::log(alpha) : -std::log1p(-alpha);
    // psi depends on y - theta only, so the integrand is taken relative to x.
    const double offset = cond.quantile(0.0, alpha);
    const double inner_min =
        integrate([&](double e) { return contrast_eval(psi, cond.sign * e, offset) * std::exp(-e); }, 0.0, kInf,
                  {kink}, "conditional contrast risk");
    auto conditional_min = [&](double) { return inner_min; };
    const double expected_conditional_min = cond.expect(conditional_min, "outer conditional risk");
    const double contrast_form = (min_risk - expected_conditional_min) / min_risk;

    // CTE side.
    const double mean_y =
        integrate([](double y) { return y * laplace_density(y); }, -kInf, kInf, {0.0}, "mean of Y");
    const double cte = cte_with_breaks(laplace_quantile, alpha, {0.5});
    auto conditional_cte = [&](double x) {
        return quadrature_cte([&](double u) { return cond.quantile(x, u); }, alpha);
    };
    const double cte_cond_mean = cond.expect(conditional_cte, "conditional tail mean");
    const double cte_form = index_from_cte_parts(cte_cond_mean, cte, mean_y);

    return {contrast_form, cte_form};
}

std::optional<double> known_index(const ModelSpec& model, double alpha, std::size_t input_index) {
    if (model.name != "additive" || model.dimension() != 2) {
        return std::nullopt;
    }
    switch (input_index) {
    case 1:
        return analytic_s_x1(alpha);
    case 2:
        return analytic_s_x2(alpha);
    default:
        return std::nullopt;
    }
}

} // namespace qosa::analytic
