#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qosa {

/// Standard normal density.
double gaussian_kernel(double u);

/// Rule-of-thumb bandwidth n^{-1/5}.
double default_bandwidth(std::size_t n);

/// Weights with |x - x_j| / h beyond this are treated as exactly zero.
inline constexpr double kKernelCutoff = 8.5;

/// Nadaraya-Watson estimate of the conditional law of Y given one scalar
/// covariate, with a Gaussian kernel:
///
///   F_n(y | x) = sum_j K((x - x_j)/h) 1{y_j <= y} / sum_j K((x - x_j)/h).
///
/// Covariates are stored sorted so a query only scans the points within
/// kKernelCutoff bandwidths. Weights are computed relative to the largest
/// weight in the window, so a constant covariate column gives weights of
/// exactly 1 and the estimator reduces bit-for-bit to the empirical CDF.
/// When no point lies within the cutoff the nearest point (lowest index on a
/// distance tie) carries all the mass.
class KernelFit {
public:
    KernelFit(std::span<const double> xs, std::span<const double> ys, double bandwidth);

    std::size_t size() const noexcept { return xs_.size(); }
    double bandwidth() const noexcept { return h_; }

    // Covariates ascending, responses permuted alongside.
    std::span<const double> covariates() const noexcept { return xs_; }
    std::span<const double> responses() const noexcept { return ys_; }
    std::span<const double> sorted_responses() const noexcept { return ys_sorted_; }

    /// Half-open index range into covariates() of the points with non-zero
    /// kernel weight at x.
    struct Window {
        std::size_t begin;
        std::size_t end;
        bool empty() const noexcept { return begin == end; }
    };
    Window window(double x) const;

    std::size_t nearest(double x) const;

    /// Conditional CDF at y. Strict = true gives F_n(y- | x), the mass strictly
    /// below y.
    double cdf(double x, double y, bool strict = false) const;

    /// inf{y : F_n(y | x) >= alpha} over the fitted responses.
    double quantile(double x, double alpha) const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> ys_sorted_;
    double h_;
};

double kernel_conditional_cdf(const KernelFit& fit, double x, double y);
double kernel_conditional_quantile(const KernelFit& fit, double x, double alpha);

/// Batch evaluation of the exceedance indicators 1{y_j > theta_hat(x_j)} used
/// by the estimator, where theta_hat is kernel_conditional_quantile at alpha.
enum class ExceedanceMethod {
    // One conditional quantile per query; O(n * window * log n).
    Direct,
    // Sweep over queries in increasing y with per-box Taylor moments of the
    // Gaussian kernel. Queries whose margin to the alpha-level is within the
    // certified error band are re-evaluated with the direct method, so the
    // indicators agree with Direct.
    Sweep,
};

struct ExceedanceResult {
    std::vector<std::uint8_t> exceeds;
    std::size_t exceedance_count = 0;
    // Queries with no fit point inside the kernel cutoff.
    std::size_t nearest_neighbor_fallbacks = 0;
    // Sweep queries that fell in the error band and were evaluated directly.
    std::size_t direct_recomputations = 0;
};

ExceedanceResult kernel_conditional_exceedance(const KernelFit& fit, std::span<const double> query_x,
                                               std::span<const double> query_y, double alpha,
                                               ExceedanceMethod method = ExceedanceMethod::Sweep);

} // namespace qosa
