#include "qosa/empirical.hpp"

#include "qosa/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qosa {
namespace {

void require_sample(std::span<const double> sample) {
    if (sample.empty()) {
        throw InvalidArgument("empty sample");
    }
}

void require_level(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("alpha must lie in (0, 1)");
    }
}

} // namespace

void CompensatedSum::add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
        comp_ += (sum_ - t) + v;
    } else {
        comp_ += (v - t) + sum_;
    }
    sum_ = t;
}

double sample_mean(std::span<const double> sample) {
    require_sample(sample);
    CompensatedSum s;
    for (double v : sample) {
        s.add(v);
    }
    return s.value() / static_cast<double>(sample.size());
}

double empirical_cdf(std::span<const double> sample, double y) {
    require_sample(sample);
    const auto count = std::count_if(sample.begin(), sample.end(), [y](double v) { return v <= y; });
    return static_cast<double>(count) / static_cast<double>(sample.size());
}

double empirical_quantile(std::span<const double> sample, double alpha) {
    require_sample(sample);
    require_level(alpha);
    const std::size_t n = sample.size();
    const double nd = static_cast<double>(n);
    // Smallest rank k with k / n >= alpha, using the same k / n expression as
    // empirical_cdf.
    auto k = static_cast<std::size_t>(std::ceil(alpha * nd));
    k = std::clamp<std::size_t>(k, 1, n);
    while (k > 1 && static_cast<double>(k - 1) / nd >= alpha) {
        --k;
    }
    while (k < n && static_cast<double>(k) / nd < alpha) {
        ++k;
    }
    std::vector<double> work(sample.begin(), sample.end());
    auto nth = work.begin() + static_cast<std::ptrdiff_t>(k - 1);
    std::nth_element(work.begin(), nth, work.end());
    return *nth;
}

TailMean tail_mean_above(std::span<const double> sample, double threshold, double alpha) {
    require_sample(sample);
    require_level(alpha);
    CompensatedSum s;
    std::size_t count = 0;
    for (double v : sample) {
        if (v > threshold) {
            s.add(v);
            ++count;
        }
    }
    TailMean out;
    out.exceedances = count;
    out.value = count == 0 ? 0.0 : s.value() / (static_cast<double>(sample.size()) * (1.0 - alpha));
    return out;
}

TailMean empirical_cte(std::span<const double> sample, double alpha) {
    return tail_mean_above(sample, empirical_quantile(sample, alpha), alpha);
}

} // namespace qosa
