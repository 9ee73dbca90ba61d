#pragma once

#include "qosa/conditional_quantile.hpp"
#include "qosa/models.hpp"

#include <cstddef>
#include <optional>

namespace qosa {

struct QosaConfig {
    double alpha = 0.5;
    // 1-based, as in X_1 ... X_k.
    std::size_t input_index = 1;
    // Unset means default_bandwidth(n) * bandwidth_scale.
    std::optional<double> bandwidth;
    double bandwidth_scale = 1.0;
    double ci_level = 0.95;
    ExceedanceMethod method = ExceedanceMethod::Sweep;

    void validate(std::size_t dimension) const;
};

inline constexpr std::size_t kMinSampleSize = 20;
inline constexpr double kDegenerateDenominator = 1e-12;

struct QosaDiagnostics {
    std::size_t conditional_exceedances = 0;   // #{j : Y_j > theta_i(X_i^j)}
    std::size_t unconditional_exceedances = 0; // #{j : Y_j > theta*}
    std::size_t nearest_neighbor_fallbacks = 0;
    std::size_t direct_recomputations = 0;
};

struct QosaEstimate {
    double s_hat = 0.0;
    double mean_r = 0.0;
    double mean_z = 0.0;  // CTE_alpha(Y) - E(Y), estimated
    double var_r = 0.0;
    double var_z = 0.0;
    double cov_rz = 0.0;  // beta
    double sigma2 = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    // Parts of the ratio form of the estimator, on the first sample.
    double mean_y = 0.0;
    double conditional_tail_mean = 0.0;
    double tail_mean = 0.0;
    double theta_star = 0.0;
    double bandwidth = 0.0;
    std::size_t n = 0;
    QosaDiagnostics diagnostics;
};

/// Z_j = y (1{y > theta*} / (1 - alpha) - 1).
double transform_z(double y, double theta_star, double alpha);

/// R_j = y (1{y > theta_i(x)} / (1 - alpha) - 1).
double transform_r(double y, double theta_cond, double alpha);

/// S = 1 - (E(Y | Y > F^{-1}_{Y|X_i}(alpha)) - E(Y)) / (CTE_alpha(Y) - E(Y)).
/// Throws DegenerateOutput when cte == mean_y.
double index_from_cte_parts(double cte_cond_mean, double cte, double mean_y);

/// Two-sample estimate of the alpha-quantile contrast index of one input.
///
/// theta* and the kernel conditional quantile are fitted on the star sample;
/// the indicators, R_j and Z_j are averaged over the first sample, so that
/// (R_j, Z_j) are i.i.d. given the star sample. The asymptotic variance is
/// the delta-method plug-in
///
///   sigma_S^2 = (Var R - 2 Cov(R, Z)(1 - S) + (1 - S)^2 Var Z) / (E Z)^2,
///
/// computed as the empirical variance of R_j - (1 - S) Z_j over (mean Z)^2,
/// which is the same quadratic form and is non-negative by construction.
/// All sums run in sample order with compensated summation.
///
/// Throws InvalidArgument for a bad config or n < kMinSampleSize and
/// DegenerateOutput when |mean Z| < kDegenerateDenominator or either
/// exceedance set is empty.
QosaEstimate estimate_qosa(const PairedSample& sample, const QosaConfig& cfg);

} // namespace qosa
