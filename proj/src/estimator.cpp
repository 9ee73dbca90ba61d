#include "qosa/estimator.hpp"

#include "qosa/empirical.hpp"
#include "qosa/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <sstream>

namespace qosa {

void QosaConfig::validate(std::size_t dimension) const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << "alpha must lie in (0, 1), got " << alpha;
        throw InvalidArgument(os.str());
    }
    if (input_index < 1 || input_index > dimension) {
        throw InvalidArgument("input index must lie in [1, " + std::to_string(dimension) + "], got " +
                              std::to_string(input_index));
    }
    if (bandwidth && !(std::isfinite(*bandwidth) && *bandwidth > 0.0)) {
        throw InvalidArgument("bandwidth must be finite and > 0");
    }
    if (!(std::isfinite(bandwidth_scale) && bandwidth_scale > 0.0)) {
        throw InvalidArgument("bandwidth scale must be finite and > 0");
    }
    if (!(ci_level > 0.0 && ci_level < 1.0)) {
        throw InvalidArgument("confidence level must lie in (0, 1)");
    }
}


double index_from_cte_parts(double cte_cond_mean, double cte, double mean_y) {
    const double denom = cte - mean_y;
    if (!(std::abs(denom) > 0.0)) {
        throw DegenerateOutput("CTE_alpha(Y) equals E(Y): the index is undefined");
    }
    return 1.0 - (cte_cond_mean - mean_y) / denom;
}

namespace {

// 1{exceeds} / (1 - alpha) - 1, with one rounding.
double indicator_factor(bool exceeds, double alpha) {
    return exceeds ? alpha / (1.0 - alpha) : -1.0;
}

} // namespace

double transform_z(double y, double theta_star, double alpha) {
    return y * indicator_factor(y > theta_star, alpha);
}

double transform_r(double y, double theta_cond, double alpha) {
    return y * indicator_factor(y > theta_cond, alpha);
}

QosaEstimate estimate_qosa(const PairedSample& sample, const QosaConfig& cfg) {
    const std::size_t k = sample.x.cols();
    cfg.validate(k);
    const std::size_t n = sample.size();
    if (n < kMinSampleSize) {
        throw InvalidArgument("sample size must be at least " + std::to_string(kMinSampleSize) + ", got " +
                              std::to_string(n));
    }
    const double alpha = cfg.alpha;
    const std::size_t col = cfg.input_index - 1;

    QosaEstimate est;
    est.n = n;
    est.bandwidth = cfg.bandwidth.value_or(default_bandwidth(n) * cfg.bandwidth_scale);
    est.theta_star = empirical_quantile(sample.y_star, alpha);

    const std::vector<double> x_star = sample.x_star.column(col);
    const KernelFit fit(x_star, sample.y_star, est.bandwidth);
    const std::vector<double> x_first = sample.x.column(col);
    const ExceedanceResult cond = kernel_conditional_exceedance(fit, x_first, sample.y, alpha, cfg.method);

    std::vector<double> r(n);
    std::vector<double> z(n);
    CompensatedSum sum_r;
    CompensatedSum sum_z;
    CompensatedSum sum_y;
    CompensatedSum tail_cond;
    CompensatedSum tail;
    std::size_t z_exceed = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double y = sample.y[j];
        const bool above_cond = cond.exceeds[j] != 0;
        const bool above = y > est.theta_star;
        r[j] = y * indicator_factor(above_cond, alpha);
        z[j] = y * indicator_factor(above, alpha);
        sum_r.add(r[j]);
        sum_z.add(z[j]);
        sum_y.add(y);
        if (above_cond) {
            tail_cond.add(y);
        }
        if (above) {
            tail.add(y);
            ++z_exceed;
        }
    }
    const double nd = static_cast<double>(n);
    est.diagnostics.conditional_exceedances = cond.exceedance_count;
    est.diagnostics.unconditional_exceedances = z_exceed;
    est.diagnostics.nearest_neighbor_fallbacks = cond.nearest_neighbor_fallbacks;
    est.diagnostics.direct_recomputations = cond.direct_recomputations;

    est.mean_r = sum_r.value() / nd;
    est.mean_z = sum_z.value() / nd;
    est.mean_y = sum_y.value() / nd;
    est.conditional_tail_mean = tail_cond.value() / (nd * (1.0 - alpha));
    est.tail_mean = tail.value() / (nd * (1.0 - alpha));

    if (cond.exceedance_count == 0 || z_exceed == 0) {
        std::ostringstream os;
        os << "empty exceedance set at alpha=" << alpha << " (conditional: " << cond.exceedance_count
           << ", unconditional: " << z_exceed << ")";
        throw DegenerateOutput(os.str());
    }
    if (!(std::abs(est.mean_z) >= kDegenerateDenominator)) {
        std::ostringstream os;
        os << "estimated CTE_alpha(Y) - E(Y) = " << est.mean_z << " is below " << kDegenerateDenominator
           << "; the output looks constant";
        throw DegenerateOutput(os.str());
    }
    est.s_hat = 1.0 - est.mean_r / est.mean_z;

    const double slope = 1.0 - est.s_hat;
    CompensatedSum srr;
    CompensatedSum szz;
    CompensatedSum srz;
    CompensatedSum sdd;
    for (std::size_t j = 0; j < n; ++j) {
        const double dr = r[j] - est.mean_r;
        const double dz = z[j] - est.mean_z;
        const double dd = dr - slope * dz;
        srr.add(dr * dr);
        szz.add(dz * dz);
        srz.add(dr * dz);
        sdd.add(dd * dd);
    }
    est.var_r = srr.value() / nd;
    est.var_z = szz.value() / nd;
    est.cov_rz = srz.value() / nd;
    est.sigma2 = (sdd.value() / nd) / (est.mean_z * est.mean_z);

    const boost::math::normal standard;
    const double zq = boost::math::quantile(standard, 0.5 * (1.0 + cfg.ci_level));
    const double half = zq * std::sqrt(est.sigma2 / nd);
    est.ci_lo = est.s_hat - half;
    est.ci_hi = est.s_hat + half;
    return est;
}

} // namespace qosa
