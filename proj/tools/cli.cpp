#include "qosa/cli.hpp"

#include "qosa/commands.hpp"
#include "qosa/error.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

namespace qosa::cli {
namespace {

struct OutputOptions {
    std::string format = "json";
    std::string out;
    std::optional<int> digits;
    bool timing = false;
};

void add_output(CLI::App& cmd, OutputOptions& o) {
    cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd.add_option("--out", o.out, "Output file; stdout when omitted");
    cmd.add_option("--digits", o.digits, "Round numbers to this many significant digits")
        ->check(CLI::Range(1, 17));
    cmd.add_flag("--timing", o.timing, "Include wall-clock seconds in the report");
}

CLI::Option* add_kernel(CLI::App& cmd, commands::KernelOptions& k) {
    cmd.add_option("--bandwidth", k.bandwidth, "Kernel bandwidth; n^-1/5 times the scale when omitted");
    return cmd.add_option("--bandwidth-scale", k.bandwidth_scale, "Multiplier of the default bandwidth");
}

void apply_thread_cap() {
    const char* env = std::getenv("QOSA_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    char* end = nullptr;
    const long threads = std::strtol(env, &end, 10);
    if (*end != '\0' || threads < 0) {
        throw InvalidArgument(std::string("QOSA_THREADS must be a non-negative integer, got '") + env + "'");
    }
#ifdef _OPENMP
    if (threads > 0) {
        omp_set_num_threads(static_cast<int>(threads));
    }
#endif
}

std::optional<std::size_t> parse_input(const std::string& s) {
    if (s == "all") {
        return std::nullopt;
    }
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size() || s.front() == '-') {
        throw InvalidArgument("--input must be a 1-based index or 'all', got '" + s + "'");
    }
    return static_cast<std::size_t>(v);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantile-oriented sensitivity indices"};
    app.require_subcommand(1);
    OutputOptions output;
    std::function<RunReport()> task;

    commands::EstimateOptions est;
    std::string input = "all";
    auto* c_est = app.add_subcommand("estimate", "Estimate the index of one or all inputs");
    c_est->add_option("--model", est.model, "Model")->check(CLI::IsMember({"additive", "vasicek"}));
    c_est->add_option("--alpha", est.alpha, "Quantile level in (0, 1)");
    c_est->add_option("--n", est.n, "Sample size");
    c_est->add_option("--seed", est.seed, "Random seed");
    c_est->add_option("--input", input, "1-based input index or 'all'");
    c_est->add_option("--ci-level", est.ci_level, "Confidence level");
    c_est->add_option("--r0", est.r0, "Vasicek initial short rate");
    c_est->add_option("--maturity", est.maturity, "Vasicek bond maturity");
    auto* est_scale = add_kernel(*c_est, est.kernel);
    add_output(*c_est, output);
    c_est->callback([&] {
        est.input = parse_input(input);
        if (est.model == "vasicek" && est_scale->count() == 0) {
            est.kernel.bandwidth_scale = commands::kVasicekBandwidthScale;
        }
        task = [&] { return commands::run_estimate(est); };
    });

    commands::Table2Options t2;
    auto* c_t2 = app.add_subcommand("table2", "Additive model over the reference grid of levels");
    c_t2->add_option("--n", t2.n, "Sample size");
    c_t2->add_option("--seed", t2.seed, "Random seed");
    c_t2->add_option("--ci-level", t2.ci_level, "Confidence level");
    add_kernel(*c_t2, t2.kernel);
    add_output(*c_t2, output);
    c_t2->callback([&] { task = [&] { return commands::run_table2(t2); }; });

    commands::RmseOptions rm;
    auto* c_rm = app.add_subcommand("rmse", "Relative RMSE of replicated additive-model estimates");
    c_rm->add_option("--n", rm.n, "Sample size");
    c_rm->add_option("--replications", rm.replications, "Number of replications");
    c_rm->add_option("--seed", rm.seed, "Random seed");
    c_rm->add_option("--alphas", rm.alphas, "Comma-separated levels")->delimiter(',');
    add_kernel(*c_rm, rm.kernel);
    add_output(*c_rm, output);
    c_rm->callback([&] { task = [&] { return commands::run_rmse(rm); }; });

    commands::VasicekOptions va;
    auto* c_va = app.add_subcommand("vasicek", "Vasicek bond price model over a grid of levels");
    c_va->add_option("--n", va.n, "Sample size");
    c_va->add_option("--seed", va.seed, "Random seed");
    c_va->add_option("--alphas", va.alphas, "Comma-separated levels")->delimiter(',');
    c_va->add_option("--ci-level", va.ci_level, "Confidence level");
    c_va->add_option("--r0", va.r0, "Initial short rate");
    c_va->add_option("--maturity", va.maturity, "Bond maturity");
    add_kernel(*c_va, va.kernel);
    add_output(*c_va, output);
    c_va->callback([&] { task = [&] { return commands::run_vasicek(va); }; });

    commands::CoverageOptions cv;
    auto* c_cv = app.add_subcommand("coverage", "Empirical coverage of the confidence interval");
    c_cv->add_option("--n", cv.n, "Sample size");
    c_cv->add_option("--replications", cv.replications, "Number of replications");
    c_cv->add_option("--alpha", cv.alpha, "Quantile level in (0, 1)");
    c_cv->add_option("--input", cv.input, "1-based input index");
    c_cv->add_option("--seed", cv.seed, "Random seed");
    c_cv->add_option("--ci-level", cv.ci_level, "Confidence level");
    add_kernel(*c_cv, cv.kernel);
    add_output(*c_cv, output);
    c_cv->callback([&] { task = [&] { return commands::run_coverage(cv); }; });

    try {
        // CLI11 takes the arguments last to first.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        apply_thread_cap();
        const auto start = std::chrono::steady_clock::now();
        RunReport report = task();
        if (output.timing) {
            report.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        const std::string text =
            output.format == "csv" ? to_csv(report, output.digits) : to_json(report, output.digits);
        if (output.out.empty()) {
            out << text;
        } else {
            std::ofstream file(output.out, std::ios::binary);
            file << text;
            if (!file) {
                err << "error: cannot write " << output.out << "\n";
                return kExitUsage;
            }
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateOutput& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitSuccess;
}

} // namespace qosa::cli
