#include "qosa/studies.hpp"

#include "qosa/analytic.hpp"
#include "qosa/empirical.hpp"
#include "qosa/error.hpp"

#include <cmath>
#include <exception>
#include <sstream>

namespace qosa {

double relative_rmse(std::span<const double> estimates, double truth) {
    if (truth == 0.0 || !std::isfinite(truth)) {
        throw InvalidArgument("relative RMSE needs a finite, non-zero truth");
    }
    if (estimates.size() < kMinRmseReplications) {
        throw InvalidArgument("relative RMSE needs at least 2 replications");
    }
    CompensatedSum s;
    for (double e : estimates) {
        const double rel = (e - truth) / truth;
        s.add(rel * rel);
    }
    return std::sqrt(s.value() / static_cast<double>(estimates.size()));
}

std::vector<QosaEstimate> replicate(const ModelSpec& model, const QosaConfig& cfg, std::size_t n,
                                    std::size_t replications, std::uint64_t seed) {
    cfg.validate(model.dimension());
    std::vector<QosaEstimate> out(replications);
    std::vector<std::exception_ptr> errors(replications);
    const auto m_count = static_cast<std::ptrdiff_t>(replications);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t m = 0; m < m_count; ++m) {
        try {
            auto stream = RandomStream::child(seed, static_cast<std::uint64_t>(m));
            const PairedSample sample = draw_paired_sample(model, stream, n);
            out[static_cast<std::size_t>(m)] = estimate_qosa(sample, cfg);
        } catch (...) {
            errors[static_cast<std::size_t>(m)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

namespace {

double require_truth(const ModelSpec& model, const QosaConfig& cfg) {
    cfg.validate(model.dimension());
    const auto truth = analytic::known_index(model, cfg.alpha, cfg.input_index);
    if (!truth) {
        throw InvalidArgument("model '" + model.name + "' has no analytic index; replication studies need one");
    }
    if (*truth == 0.0) {
        throw InvalidArgument("analytic index is 0; relative errors are undefined");
    }
    return *truth;
}

} // namespace

RmseResult rmse_study(const ModelSpec& model, const QosaConfig& cfg, std::size_t n, std::size_t replications,
                      std::uint64_t seed) {
    if (replications < kMinRmseReplications) {
        throw InvalidArgument("RMSE study needs at least 2 replications, got " + std::to_string(replications));
    }
    RmseResult res;
    res.truth = require_truth(model, cfg);
    for (const auto& e : replicate(model, cfg, n, replications, seed)) {
        res.estimates.push_back(e.s_hat);
    }
    res.rmse = relative_rmse(res.estimates, res.truth);
    return res;
}

CoverageResult coverage_study(const ModelSpec& model, const QosaConfig& cfg, std::size_t n,
                              std::size_t replications, std::uint64_t seed) {
    if (replications < kMinCoverageReplications) {
        throw InvalidArgument("coverage study needs at least 20 replications, got " + std::to_string(replications));
    }
    CoverageResult res;
    res.truth = require_truth(model, cfg);
    res.estimates = replicate(model, cfg, n, replications, seed);
    std::size_t covered = 0;
    CompensatedSum width;
    for (const auto& e : res.estimates) {
        if (e.ci_lo <= res.truth && res.truth <= e.ci_hi) {
            ++covered;
        }
        width.add(e.ci_hi - e.ci_lo);
    }
    const auto md = static_cast<double>(replications);
    res.coverage = static_cast<double>(covered) / md;
    res.mean_width = width.value() / md;
    return res;
}

} // namespace qosa
