#include "qosa/conditional_quantile.hpp"

#include "qosa/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace qosa {

double gaussian_kernel(double u) {
    return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

double default_bandwidth(std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("bandwidth: sample size must be at least 1");
    }
    return std::pow(static_cast<double>(n), -0.2);
}

KernelFit::KernelFit(std::span<const double> xs, std::span<const double> ys, double bandwidth) : h_(bandwidth) {
    if (xs.empty() || xs.size() != ys.size()) {
        throw InvalidArgument("kernel fit needs equally sized, non-empty covariate and response samples");
    }
    if (!(std::isfinite(bandwidth) && bandwidth > 0.0)) {
        throw InvalidArgument("kernel bandwidth must be finite and > 0");
    }
    const std::size_t n = xs.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(xs[j]) || !std::isfinite(ys[j])) {
            throw InvalidArgument("kernel fit data must be finite");
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    xs_.resize(n);
    ys_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        xs_[j] = xs[order[j]];
        ys_[j] = ys[order[j]];
    }
    ys_sorted_ = ys_;
    std::sort(ys_sorted_.begin(), ys_sorted_.end());
}

KernelFit::Window KernelFit::window(double x) const {
    const double reach = kKernelCutoff * h_;
    const auto lo = std::lower_bound(xs_.begin(), xs_.end(), x - reach);
    const auto hi = std::upper_bound(lo, xs_.end(), x + reach);
    return {static_cast<std::size_t>(lo - xs_.begin()), static_cast<std::size_t>(hi - xs_.begin())};
}

std::size_t KernelFit::nearest(double x) const {
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.end()) {
        return xs_.size() - 1;
    }
    auto idx = static_cast<std::size_t>(it - xs_.begin());
    if (idx > 0 && x - xs_[idx - 1] <= *it - x) {
        // Step back over equal covariates to the first of the run.
        idx = static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), xs_[idx - 1]) - xs_.begin());
    }
    return idx;
}

namespace {

// Weights of the points of one window, relative to the nearest point.
struct WindowWeights {
    KernelFit::Window window{};
    std::vector<double> weights;
    double total = 0.0;
    // Set when the window is empty; index of the point carrying all the mass.
    std::optional<std::size_t> nearest;
};

WindowWeights weigh(const KernelFit& fit, double x) {
    WindowWeights ww;
    ww.window = fit.window(x);
    if (ww.window.empty()) {
        ww.nearest = fit.nearest(x);
        return ww;
    }
    const auto xs = fit.covariates();
    const double h = fit.bandwidth();
    const double u_min = (x - xs[fit.nearest(x)]) / h;
    const double u_min2 = u_min * u_min;
    ww.weights.resize(ww.window.end - ww.window.begin);
    for (std::size_t k = ww.window.begin; k < ww.window.end; ++k) {
        const double u = (x - xs[k]) / h;
        const double w = std::exp(-0.5 * (u * u - u_min2));
        ww.weights[k - ww.window.begin] = w;
        ww.total += w;
    }
    return ww;
}

double weighted_cdf(const KernelFit& fit, const WindowWeights& ww, double y, bool strict) {
    const auto ys = fit.responses();
    auto below = [y, strict](double v) { return strict ? v < y : v <= y; };
    if (ww.nearest) {
        return below(ys[*ww.nearest]) ? 1.0 : 0.0;
    }
    double mass = 0.0;
    for (std::size_t k = ww.window.begin; k < ww.window.end; ++k) {
        if (below(ys[k])) {
            mass += ww.weights[k - ww.window.begin];
        }
    }
    return mass / ww.total;
}

double weighted_quantile(const KernelFit& fit, const WindowWeights& ww, double alpha) {
    if (ww.nearest) {
        return fit.responses()[*ww.nearest];
    }
    const auto sorted = fit.sorted_responses();
    const auto it = std::partition_point(sorted.begin(), sorted.end(),
                                         [&](double y) { return weighted_cdf(fit, ww, y, false) < alpha; });
    // F_n(max y | x) == 1 exactly, so the search always succeeds.
    return it == sorted.end() ? sorted.back() : *it;
}

void require_level(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("alpha must lie in (0, 1)");
    }
}

} // namespace

double KernelFit::cdf(double x, double y, bool strict) const {
    return weighted_cdf(*this, weigh(*this, x), y, strict);
}

double KernelFit::quantile(double x, double alpha) const {
    require_level(alpha);
    return weighted_quantile(*this, weigh(*this, x), alpha);
}

double kernel_conditional_cdf(const KernelFit& fit, double x, double y) {
    return fit.cdf(x, y);
}

double kernel_conditional_quantile(const KernelFit& fit, double x, double alpha) {
    return fit.quantile(x, alpha);
}

namespace {

ExceedanceResult exceedance_direct(const KernelFit& fit, std::span<const double> qx, std::span<const double> qy,
                                   double alpha) {
    ExceedanceResult out;
    out.exceeds.resize(qx.size());
    for (std::size_t j = 0; j < qx.size(); ++j) {
        const WindowWeights ww = weigh(fit, qx[j]);
        if (ww.nearest) {
            ++out.nearest_neighbor_fallbacks;
        }
        out.exceeds[j] = qy[j] > weighted_quantile(fit, ww, alpha) ? 1 : 0;
    }
    return out;
}

// Fast Gauss transform over boxes of width h/2. For a point at offset v (in
// bandwidths) from its box centre and a query at offset u,
//
//   exp(-(u - v)^2 / 2) = exp(-u^2/2) sum_p u^p [exp(-v^2/2) v^p / p!] + rem,
//
// with |v| <= 1/4 and |u| <= 8.75 the remainder is below 1e-18 of the
// largest weight. Each box keeps the bracketed moments for all its points and
// for those inserted so far (responses strictly below the current query).
constexpr std::size_t kTerms = 18;
constexpr double kBoxWidth = 0.5;      // in bandwidths
constexpr double kRelativeBand = 1e-8; // margin band, relative to total weight
constexpr double kAnnulusReach = 9.5;  // covers every point of an included box

class BoxMoments {
public:
    BoxMoments(const KernelFit& fit) : fit_(fit) {
        const auto xs = fit.covariates();
        h_ = fit.bandwidth();
        width_ = kBoxWidth * h_;
        origin_ = xs.front();
        boxes_ = static_cast<std::size_t>(std::floor((xs.back() - origin_) / width_)) + 1;
        all_.assign(boxes_ * kTerms, 0.0);
        below_.assign(boxes_ * kTerms, 0.0);
        occupied_.assign(boxes_, 0);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            const std::size_t b = box_of(xs[k]);
            accumulate(all_, b, xs[k]);
            occupied_[b] = 1;
        }
    }

    void insert(std::size_t k) {
        const double x = fit_.covariates()[k];
        accumulate(below_, box_of(x), x);
    }

    // Approximate total and strictly-below kernel mass at x, in units of
    // exp(-u^2/2) without the 1/sqrt(2 pi) factor.
    std::pair<double, double> mass(double x) const {
        const double reach = kKernelCutoff * h_;
        const std::size_t b_lo = clamp_box((x - reach - origin_) / width_);
        const std::size_t b_hi = clamp_box((x + reach - origin_) / width_);
        double total = 0.0;
        double below = 0.0;
        for (std::size_t b = b_lo; b <= b_hi; ++b) {
            if (!occupied_[b]) {
                continue;
            }
            const double u = (x - centre(b)) / h_;
            const double g = std::exp(-0.5 * u * u);
            const double* ma = &all_[b * kTerms];
            const double* mb = &below_[b * kTerms];
            double pa = 0.0;
            double pb = 0.0;
            for (std::size_t p = kTerms; p-- > 0;) {
                pa = pa * u + ma[p];
                pb = pb * u + mb[p];
            }
            total += g * pa;
            below += g * pb;
        }
        return {total, below};
    }

private:
    std::size_t box_of(double x) const {
        const auto b = static_cast<std::size_t>(std::floor((x - origin_) / width_));
        return std::min(b, boxes_ - 1);
    }

    std::size_t clamp_box(double pos) const {
        const double f = std::floor(pos);
        if (f <= 0.0) {
            return 0;
        }
        if (f >= static_cast<double>(boxes_ - 1)) {
            return boxes_ - 1;
        }
        return static_cast<std::size_t>(f);
    }

    double centre(std::size_t b) const { return origin_ + (static_cast<double>(b) + 0.5) * width_; }

    void accumulate(std::vector<double>& m, std::size_t b, double x) const {
        const double v = (x - centre(b)) / h_;
        double c = std::exp(-0.5 * v * v);
        double* row = &m[b * kTerms];
        for (std::size_t p = 0; p < kTerms; ++p) {
            row[p] += c;
            c *= v / static_cast<double>(p + 1);
        }
    }

    const KernelFit& fit_;
    double h_ = 0.0;
    double width_ = 0.0;
    double origin_ = 0.0;
    std::size_t boxes_ = 0;
    std::vector<double> all_;
    std::vector<double> below_;
    std::vector<std::uint8_t> occupied_;
};

ExceedanceResult exceedance_sweep(const KernelFit& fit, std::span<const double> qx, std::span<const double> qy,
                                  double alpha) {
    const std::size_t n_fit = fit.size();
    const std::size_t n_query = qx.size();
    const auto xs = fit.covariates();
    const auto ys = fit.responses();
    const double h = fit.bandwidth();
    const double annulus_weight = std::exp(-0.5 * kKernelCutoff * kKernelCutoff);

    std::vector<std::size_t> fit_order(n_fit);
    std::iota(fit_order.begin(), fit_order.end(), std::size_t{0});
    std::stable_sort(fit_order.begin(), fit_order.end(), [&](std::size_t a, std::size_t b) { return ys[a] < ys[b]; });
    std::vector<std::size_t> query_order(n_query);
    std::iota(query_order.begin(), query_order.end(), std::size_t{0});
    std::stable_sort(query_order.begin(), query_order.end(),
                     [&](std::size_t a, std::size_t b) { return qy[a] < qy[b]; });

    BoxMoments moments(fit);
    ExceedanceResult out;
    out.exceeds.resize(n_query);
    std::size_t inserted = 0;
    for (const std::size_t j : query_order) {
        const double x = qx[j];
        const double y = qy[j];
        while (inserted < n_fit && ys[fit_order[inserted]] < y) {
            moments.insert(fit_order[inserted]);
            ++inserted;
        }
        const KernelFit::Window win = fit.window(x);
        if (win.empty()) {
            ++out.nearest_neighbor_fallbacks;
            out.exceeds[j] = y > ys[fit.nearest(x)] ? 1 : 0;
            continue;
        }
        const auto outer_lo = std::lower_bound(xs.begin(), xs.end(), x - kAnnulusReach * h);
        const auto outer_hi = std::upper_bound(xs.begin(), xs.end(), x + kAnnulusReach * h);
        const auto annulus = static_cast<double>((outer_hi - outer_lo) - static_cast<std::ptrdiff_t>(win.end - win.begin));

        const auto [total, below] = moments.mass(x);
        const double margin = below - alpha * total;
        const double band = kRelativeBand * total + 2.0 * annulus * annulus_weight;
        if (std::abs(margin) <= band) {
            ++out.direct_recomputations;
            out.exceeds[j] = y > weighted_quantile(fit, weigh(fit, x), alpha) ? 1 : 0;
        } else {
            // y > theta_hat(x)  <=>  F_n(y- | x) >= alpha
            out.exceeds[j] = margin > 0.0 ? 1 : 0;
        }
    }
    return out;
}

} // namespace

ExceedanceResult kernel_conditional_exceedance(const KernelFit& fit, std::span<const double> query_x,
                                               std::span<const double> query_y, double alpha,
                                               ExceedanceMethod method) {
    require_level(alpha);
    if (query_x.size() != query_y.size()) {
        throw InvalidArgument("exceedance queries need equally sized covariates and responses");
    }
    ExceedanceResult out = method == ExceedanceMethod::Direct ? exceedance_direct(fit, query_x, query_y, alpha)
                                                              : exceedance_sweep(fit, query_x, query_y, alpha);
    out.exceedance_count = static_cast<std::size_t>(std::count(out.exceeds.begin(), out.exceeds.end(), 1));
    return out;
}

} // namespace qosa
