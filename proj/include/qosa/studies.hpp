#pragma once

#include "qosa/estimator.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qosa {

/// sqrt((1/M) sum_m ((s_m - truth) / truth)^2). Throws for truth == 0 or
/// fewer than two estimates.
double relative_rmse(std::span<const double> estimates, double truth);

/// Runs M replications, replication m on RandomStream::child(seed, m).
/// Replications may run concurrently; results are ordered by m.
std::vector<QosaEstimate> replicate(const ModelSpec& model, const QosaConfig& cfg, std::size_t n,
                                    std::size_t replications, std::uint64_t seed);

struct RmseResult {
    double rmse = 0.0;
    double truth = 0.0;
    std::vector<double> estimates;
};

/// Needs an analytic truth for (model, alpha, input); M >= 2.
RmseResult rmse_study(const ModelSpec& model, const QosaConfig& cfg, std::size_t n,
                      std::size_t replications, std::uint64_t seed);

struct CoverageResult {
    double coverage = 0.0;
    double mean_width = 0.0;
    double truth = 0.0;
    std::vector<QosaEstimate> estimates;
};

/// Fraction of replications whose confidence interval contains the truth.
/// Needs an analytic truth; M >= 20.
CoverageResult coverage_study(const ModelSpec& model, const QosaConfig& cfg, std::size_t n,
                              std::size_t replications, std::uint64_t seed);

inline constexpr std::size_t kMinRmseReplications = 2;
inline constexpr std::size_t kMinCoverageReplications = 20;

} // namespace qosa
