#include "qosa/commands.hpp"

#include "qosa/analytic.hpp"
#include "qosa/error.hpp"
#include "qosa/estimator.hpp"
#include "qosa/studies.hpp"

#include <algorithm>
#include <cmath>

namespace qosa::commands {
namespace {

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

ModelSpec model_named(const std::string& name, double r0, double maturity) {
    if (name == "additive") {
        return additive_model();
    }
    if (name == "vasicek") {
        return vasicek_model(r0, maturity);
    }
    throw InvalidArgument("unknown model '" + name + "' (expected additive or vasicek)");
}

QosaConfig make_config(double alpha, std::size_t input, const KernelOptions& kernel, double ci_level) {
    QosaConfig cfg;
    cfg.alpha = alpha;
    cfg.input_index = input;
    cfg.bandwidth = kernel.bandwidth;
    cfg.bandwidth_scale = kernel.bandwidth_scale;
    cfg.ci_level = ci_level;
    return cfg;
}

void echo_kernel(Record& config, const KernelOptions& kernel) {
    if (kernel.bandwidth) {
        config.set("bandwidth", *kernel.bandwidth);
    } else {
        config.set("bandwidth", std::string("default"));
    }
    config.set("bandwidth_scale", kernel.bandwidth_scale);
}

void require_alphas(const std::vector<double>& alphas) {
    if (alphas.empty()) {
        throw InvalidArgument("at least one alpha is required");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0)) {
            throw InvalidArgument("alpha must lie in (0, 1), got " + format_number(a));
        }
    }
}

std::string join_alphas(const std::vector<double>& alphas) {
    std::string out;
    for (double a : alphas) {
        out += (out.empty() ? "" : " ") + format_number(a);
    }
    return out;
}

struct DiagnosticTotals {
    std::int64_t nearest_neighbor_fallbacks = 0;
    std::int64_t direct_recomputations = 0;

    void add(const QosaEstimate& e) {
        nearest_neighbor_fallbacks += as_int(e.diagnostics.nearest_neighbor_fallbacks);
        direct_recomputations += as_int(e.diagnostics.direct_recomputations);
    }

    Record record() const {
        Record r;
        r.set("nearest_neighbor_fallbacks", nearest_neighbor_fallbacks);
        r.set("direct_recomputations", direct_recomputations);
        return r;
    }
};

void put_estimate(Record& row, const QosaEstimate& e) {
    row.set("s_hat", e.s_hat)
        .set("ci_lo", e.ci_lo)
        .set("ci_hi", e.ci_hi)
        .set("sigma2", e.sigma2)
        .set("mean_r", e.mean_r)
        .set("mean_z", e.mean_z)
        .set("var_r", e.var_r)
        .set("var_z", e.var_z)
        .set("cov_rz", e.cov_rz)
        .set("bandwidth", e.bandwidth)
        .set("conditional_exceedances", as_int(e.diagnostics.conditional_exceedances))
        .set("unconditional_exceedances", as_int(e.diagnostics.unconditional_exceedances));
}

} // namespace

RunReport run_estimate(const EstimateOptions& opts) {
    const ModelSpec model = model_named(opts.model, opts.r0, opts.maturity);
    std::vector<std::size_t> inputs;
    if (opts.input) {
        inputs.push_back(*opts.input);
    } else {
        for (std::size_t i = 1; i <= model.dimension(); ++i) {
            inputs.push_back(i);
        }
    }
    for (std::size_t i : inputs) {
        make_config(opts.alpha, i, opts.kernel, opts.ci_level).validate(model.dimension());
    }

    RunReport report;
    report.command = "estimate";
    report.config.set("model", model.name)
        .set("alpha", opts.alpha)
        .set("n", as_int(opts.n))
        .set("seed", static_cast<std::int64_t>(opts.seed))
        .set("input", opts.input ? std::to_string(*opts.input) : std::string("all"));
    echo_kernel(report.config, opts.kernel);
    report.config.set("ci_level", opts.ci_level);
    if (model.name == "vasicek") {
        report.config.set("r0", opts.r0).set("maturity", opts.maturity);
    }

    RandomStream stream(opts.seed);
    const PairedSample sample = draw_paired_sample(model, stream, opts.n);
    DiagnosticTotals diag;
    for (std::size_t i : inputs) {
        const QosaEstimate e = estimate_qosa(sample, make_config(opts.alpha, i, opts.kernel, opts.ci_level));
        diag.add(e);
        Record row;
        row.set("alpha", opts.alpha).set("input", as_int(i)).set("input_name", model.input_names[i - 1]);
        put_estimate(row, e);
        if (const auto truth = analytic::known_index(model, opts.alpha, i)) {
            row.set("truth", *truth).set("abs_error", std::abs(e.s_hat - *truth));
        }
        report.results.push_back(std::move(row));
    }
    report.diagnostics = diag.record();
    return report;
}

RunReport run_table2(const Table2Options& opts) {
    const ModelSpec model = additive_model();
    RunReport report;
    report.command = "table2";
    report.config.set("model", model.name)
        .set("alphas", join_alphas(kTable2Alphas))
        .set("n", as_int(opts.n))
        .set("seed", static_cast<std::int64_t>(opts.seed));
    echo_kernel(report.config, opts.kernel);
    report.config.set("ci_level", opts.ci_level);

    RandomStream stream(opts.seed);
    const PairedSample sample = draw_paired_sample(model, stream, opts.n);
    DiagnosticTotals diag;
    for (double alpha : kTable2Alphas) {
        for (std::size_t i = 1; i <= model.dimension(); ++i) {
            const QosaEstimate e = estimate_qosa(sample, make_config(alpha, i, opts.kernel, opts.ci_level));
            diag.add(e);
            const double truth = *analytic::known_index(model, alpha, i);
            Record row;
            row.set("alpha", alpha)
                .set("input", as_int(i))
                .set("input_name", model.input_names[i - 1])
                .set("truth", truth)
                .set("s_hat", e.s_hat)
                .set("ci_lo", e.ci_lo)
                .set("ci_hi", e.ci_hi)
                .set("sigma2", e.sigma2)
                .set("abs_error", std::abs(e.s_hat - truth));
            report.results.push_back(std::move(row));
        }
    }
    report.diagnostics = diag.record();
    return report;
}

RunReport run_rmse(const RmseOptions& opts) {
    require_alphas(opts.alphas);
    if (opts.replications < kMinRmseReplications) {
        throw InvalidArgument("rmse needs at least 2 replications, got " + std::to_string(opts.replications));
    }
    const ModelSpec model = additive_model();
    RunReport report;
    report.command = "rmse";
    report.config.set("model", model.name)
        .set("alphas", join_alphas(opts.alphas))
        .set("n", as_int(opts.n))
        .set("replications", as_int(opts.replications))
        .set("seed", static_cast<std::int64_t>(opts.seed));
    echo_kernel(report.config, opts.kernel);

    for (double alpha : opts.alphas) {
        for (std::size_t i = 1; i <= model.dimension(); ++i) {
            const RmseResult res =
                rmse_study(model, make_config(alpha, i, opts.kernel, 0.95), opts.n, opts.replications, opts.seed);
            double mean = 0.0;
            for (double e : res.estimates) {
                mean += e;
            }
            mean /= static_cast<double>(res.estimates.size());
            Record row;
            row.set("alpha", alpha)
                .set("input", as_int(i))
                .set("input_name", model.input_names[i - 1])
                .set("truth", res.truth)
                .set("rmse", res.rmse)
                .set("mean_estimate", mean)
                .set("replications", as_int(res.estimates.size()));
            report.results.push_back(std::move(row));
        }
    }
    return report;
}

RunReport run_vasicek(const VasicekOptions& opts) {
    require_alphas(opts.alphas);
    const ModelSpec model = vasicek_model(opts.r0, opts.maturity);
    RunReport report;
    report.command = "vasicek";
    report.config.set("model", model.name)
        .set("alphas", join_alphas(opts.alphas))
        .set("n", as_int(opts.n))
        .set("seed", static_cast<std::int64_t>(opts.seed))
        .set("r0", opts.r0)
        .set("maturity", opts.maturity);
    echo_kernel(report.config, opts.kernel);
    report.config.set("ci_level", opts.ci_level);

    RandomStream stream(opts.seed);
    const PairedSample sample = draw_paired_sample(model, stream, opts.n);
    DiagnosticTotals diag;
    const std::size_t k = model.dimension();
    for (double alpha : opts.alphas) {
        std::vector<QosaEstimate> row_estimates;
        for (std::size_t i = 1; i <= k; ++i) {
            row_estimates.push_back(estimate_qosa(sample, make_config(alpha, i, opts.kernel, opts.ci_level)));
            diag.add(row_estimates.back());
        }
        for (std::size_t i = 1; i <= k; ++i) {
            const double s = row_estimates[i - 1].s_hat;
            // 1 for the most influential input at this level.
            const auto rank = 1 + std::count_if(row_estimates.begin(), row_estimates.end(),
                                                [s](const QosaEstimate& e) { return e.s_hat > s; });
            Record row;
            row.set("alpha", alpha)
                .set("input", as_int(i))
                .set("input_name", model.input_names[i - 1])
                .set("s_hat", s)
                .set("ci_lo", row_estimates[i - 1].ci_lo)
                .set("ci_hi", row_estimates[i - 1].ci_hi)
                .set("sigma2", row_estimates[i - 1].sigma2)
                .set("rank", static_cast<std::int64_t>(rank));
            report.results.push_back(std::move(row));
        }
    }
    report.diagnostics = diag.record();
    return report;
}

RunReport run_coverage(const CoverageOptions& opts) {
    const ModelSpec model = additive_model();
    const QosaConfig cfg = make_config(opts.alpha, opts.input, opts.kernel, opts.ci_level);
    const CoverageResult res = coverage_study(model, cfg, opts.n, opts.replications, opts.seed);

    RunReport report;
    report.command = "coverage";
    report.config.set("model", model.name)
        .set("alpha", opts.alpha)
        .set("input", as_int(opts.input))
        .set("n", as_int(opts.n))
        .set("replications", as_int(opts.replications))
        .set("seed", static_cast<std::int64_t>(opts.seed));
    echo_kernel(report.config, opts.kernel);
    report.config.set("ci_level", opts.ci_level);

    Record row;
    row.set("alpha", opts.alpha)
        .set("input", as_int(opts.input))
        .set("input_name", model.input_names[opts.input - 1])
        .set("n", as_int(opts.n))
        .set("replications", as_int(opts.replications))
        .set("truth", res.truth)
        .set("coverage", res.coverage)
        .set("mean_width", res.mean_width);
    report.results.push_back(std::move(row));

    DiagnosticTotals diag;
    for (std::size_t m = 0; m < res.estimates.size(); ++m) {
        const QosaEstimate& e = res.estimates[m];
        diag.add(e);
        Record rep;
        rep.set("replication", as_int(m))
            .set("s_hat", e.s_hat)
            .set("ci_lo", e.ci_lo)
            .set("ci_hi", e.ci_hi)
            .set("sigma2", e.sigma2)
            .set("covered", static_cast<std::int64_t>(e.ci_lo <= res.truth && res.truth <= e.ci_hi));
        report.replications.push_back(std::move(rep));
    }
    report.diagnostics = diag.record();
    return report;
}

} // namespace qosa::commands
