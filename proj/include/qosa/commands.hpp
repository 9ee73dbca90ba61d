#pragma once

#include "qosa/report.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qosa::commands {

inline const std::vector<double> kTable2Alphas{0.05, 0.1, 0.5, 0.7, 0.99};
inline const std::vector<double> kRmseAlphas{0.05, 0.1, 0.5, 0.7};
inline const std::vector<double> kVasicekAlphas{0.05, 0.1, 0.5, 0.7, 0.9, 0.99};

struct KernelOptions {
    std::optional<double> bandwidth;
    double bandwidth_scale = 1.0;
};

struct EstimateOptions {
    std::string model = "additive";
    double alpha = 0.5;
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    // Empty means every input.
    std::optional<std::size_t> input;
    KernelOptions kernel;
    double ci_level = 0.95;
    double r0 = 0.1;
    double maturity = 1.0;
};

struct Table2Options {
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    KernelOptions kernel;
    double ci_level = 0.95;
};

struct RmseOptions {
    std::size_t n = 100000;
    std::size_t replications = 100;
    std::uint64_t seed = 1;
    std::vector<double> alphas = kRmseAlphas;
    KernelOptions kernel;
};

// Default bandwidth scale of the Vasicek table; see README.
inline constexpr double kVasicekBandwidthScale = 0.1;

struct VasicekOptions {
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    std::vector<double> alphas = kVasicekAlphas;
    KernelOptions kernel{std::nullopt, kVasicekBandwidthScale};
    double ci_level = 0.95;
    double r0 = 0.1;
    double maturity = 1.0;
};

struct CoverageOptions {
    std::size_t n = 5000;
    std::size_t replications = 200;
    double alpha = 0.5;
    std::size_t input = 1;
    std::uint64_t seed = 1;
    KernelOptions kernel;
    double ci_level = 0.95;
};

RunReport run_estimate(const EstimateOptions& opts);
RunReport run_table2(const Table2Options& opts);
RunReport run_rmse(const RmseOptions& opts);
RunReport run_vasicek(const VasicekOptions& opts);
RunReport run_coverage(const CoverageOptions& opts);

} // namespace qosa::commands
