#pragma once

#include <cstddef>
#include <span>

namespace qosa {

/// Fraction of sample points <= y.
double empirical_cdf(std::span<const double> sample, double y);

/// Generalized inverse inf{q : F_n(q) >= alpha}; always a sample value.
double empirical_quantile(std::span<const double> sample, double alpha);

/// (1 / (n (1 - alpha))) * sum_j y_j 1{y_j > threshold} and the size of the
/// exceedance set.
struct TailMean {
    double value = 0.0;
    std::size_t exceedances = 0;

    // No point strictly above the threshold: value is 0 and should not be
    // used as a CTE.
    bool empty_tail() const noexcept { return exceedances == 0; }
};

TailMean tail_mean_above(std::span<const double> sample, double threshold, double alpha);

/// Empirical CTE at level alpha, thresholded at empirical_quantile(sample, alpha).
TailMean empirical_cte(std::span<const double> sample, double alpha);

double sample_mean(std::span<const double> sample);

/// Neumaier-compensated running sum. Addition order is the caller's, so the
/// result is reproducible for a fixed order.
class CompensatedSum {
public:
    void add(double v) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace qosa
