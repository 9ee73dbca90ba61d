#pragma once

#include "qosa/random.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qosa {

/// Row-major n x k block of input draws.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::vector<double> column(std::size_t c) const;

    bool operator==(const SampleMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

using ResponseMap = std::function<double(std::span<const double>)>;

/// Deterministic response Y = f(X) over independent inputs.
struct ModelSpec {
    std::string name;
    std::vector<std::string> input_names;
    std::vector<InputDistribution> inputs;
    ResponseMap map;

    std::size_t dimension() const noexcept { return inputs.size(); }
    double evaluate(std::span<const double> x) const;
};

/// The two independent n-samples of the estimation procedure. `x`/`y` is the
/// averaging sample, `x_star`/`y_star` the one the thresholds are fitted on.
struct PairedSample {
    SampleMatrix x;
    std::vector<double> y;
    SampleMatrix x_star;
    std::vector<double> y_star;

    std::size_t size() const noexcept { return y.size(); }
    bool operator==(const PairedSample&) const = default;
};

/// Draws the first sample, then the second, from consecutive stream output.
PairedSample draw_paired_sample(const ModelSpec& model, RandomStream& stream, std::size_t n);

/// Y = X1 + X2 with X1 ~ Exp(1), X2 ~ -Exp(1).
ModelSpec additive_model();

struct VasicekParams {
    double a;       // speed of mean reversion
    double b;       // long-term level
    double sigma;   // short-rate volatility
    double r0;      // initial short rate
    double maturity;
};

/// Zero-coupon bond price P(t, T) = A(t, T) exp(-r_t B(t, T)) in the Vasicek
/// model, evaluated with r_t = r0.
///
/// The volatility contribution to log A is written as sigma^2 tau^3 c(a tau)
/// with c(x) = (2x - 3 + 4e^{-x} - e^{-2x}) / (4x^3), which is evaluated by its
/// Taylor series for small x. This keeps the price accurate as a -> 0, where
/// the textbook form subtracts two terms of order sigma^2 / a; a = 0 gives the
/// Brownian limit exp(-r0 tau + sigma^2 tau^3 / 6).
///
/// Requires a >= 0, sigma >= 0, 0 <= t <= maturity. Throws NumericalError if
/// the price is not finite.
double vasicek_bond_price(const VasicekParams& p, double t = 0.0);

/// B(t, T) = (1 - e^{-a tau}) / a, with the a -> 0 limit tau.
double vasicek_b_factor(double a, double tau);

/// (a, b, sigma) ~ Uniform(0, 1)^3, response = bond price at t = 0.
ModelSpec vasicek_model(double r0 = 0.1, double maturity = 1.0);

} // namespace qosa
