#include "qosa/models.hpp"

#include "qosa/error.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace qosa {

std::vector<double> SampleMatrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = data_[r * cols_ + c];
    }
    return out;
}

double ModelSpec::evaluate(std::span<const double> x) const {
    if (x.size() != inputs.size()) {
        throw InvalidArgument("model '" + name + "' expects " + std::to_string(inputs.size()) + " inputs");
    }
    return map(x);
}

namespace {

void fill(const ModelSpec& model, RandomStream& stream, SampleMatrix& x, std::vector<double>& y) {
    const std::size_t k = model.dimension();
    for (std::size_t j = 0; j < x.rows(); ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            x(j, i) = model.inputs[i].draw(stream);
        }
        y[j] = model.map(x.row(j));
    }
}

} // namespace

PairedSample draw_paired_sample(const ModelSpec& model, RandomStream& stream, std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("sample size must be at least 1");
    }
    if (model.dimension() == 0 || !model.map) {
        throw InvalidArgument("model '" + model.name + "' has no inputs or no response map");
    }
    const std::size_t k = model.dimension();
    PairedSample s{SampleMatrix(n, k), std::vector<double>(n), SampleMatrix(n, k), std::vector<double>(n)};
    fill(model, stream, s.x, s.y);
    fill(model, stream, s.x_star, s.y_star);
    return s;
}

ModelSpec additive_model() {
    return ModelSpec{
        "additive",
        {"X1", "X2"},
        {InputDistribution::exponential(1.0), InputDistribution::negated_exponential(1.0)},
        [](std::span<const double> x) { return x[0] + x[1]; },
    };
}

double vasicek_b_factor(double a, double tau) {
    const double x = a * tau;
    if (x == 0.0) {
        return tau;
    }
    return -std::expm1(-x) / a;
}

namespace {

// c(x) = (2x - 3 + 4e^{-x} - e^{-2x}) / (4x^3)
//      = sum_m (-1)^m (2^{m+3} - 4) / (4 (m+3)!) x^m,   c(0) = 1/6.
double volatility_factor(double x) {
    if (x < 0.5) {
        double term_scale = 1.0 / 6.0;  // 1 / (m+3)! at m = 0
        double pow2 = 8.0;              // 2^{m+3}
        double xm = 1.0;
        double sum = 0.0;
        for (int m = 0; m < 30; ++m) {
            const double term = (pow2 - 4.0) / 4.0 * term_scale * xm;
            sum += (m % 2 == 0) ? term : -term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) {
                break;
            }
            term_scale /= static_cast<double>(m + 4);
            pow2 *= 2.0;
            xm *= x;
        }
        return sum;
    }
    const double e1 = std::exp(-x);
    return (2.0 * x - 3.0 + 4.0 * e1 - e1 * e1) / (4.0 * x * x * x);
}

} // namespace

double vasicek_bond_price(const VasicekParams& p, double t) {
    if (!(p.a >= 0.0) || !(p.sigma >= 0.0) || !(p.maturity > 0.0) || !(t >= 0.0 && t <= p.maturity) ||
        !std::isfinite(p.b) || !std::isfinite(p.r0)) {
        std::ostringstream os;
        os << "invalid Vasicek parameters: a=" << p.a << " b=" << p.b << " sigma=" << p.sigma
           << " r0=" << p.r0 << " T=" << p.maturity << " t=" << t;
        throw InvalidArgument(os.str());
    }
    const double tau = p.maturity - t;
    const double bf = vasicek_b_factor(p.a, tau);
    // log A = b (B - tau) - sigma^2/(2a^2) (B - tau) - sigma^2/(4a) B^2
    //       = b (B - tau) + sigma^2 tau^3 c(a tau)
    const double log_a = p.b * (bf - tau) + p.sigma * p.sigma * tau * tau * tau * volatility_factor(p.a * tau);
    const double price = std::exp(log_a - p.r0 * bf);
    if (!std::isfinite(price)) {
        throw NumericalError("non-finite Vasicek bond price");
    }
    return price;
}

ModelSpec vasicek_model(double r0, double maturity) {
    if (!std::isfinite(r0) || !(maturity > 0.0)) {
        throw InvalidArgument("vasicek model requires finite r0 and maturity > 0");
    }
    const auto unit = InputDistribution::uniform(0.0, 1.0);
    return ModelSpec{
        "vasicek",
        {"a", "b", "sigma"},
        {unit, unit, unit},
        [r0, maturity](std::span<const double> x) {
            return vasicek_bond_price(VasicekParams{x[0], x[1], x[2], r0, maturity});
        },
    };
}

} // namespace qosa
