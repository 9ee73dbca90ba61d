#include "qosa/contrast.hpp"

#include "qosa/empirical.hpp"
#include "qosa/error.hpp"

#include <cmath>
#include <sstream>

namespace qosa {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_nonempty(std::span<const double> sample) {
    if (sample.empty()) {
        throw InvalidArgument("contrast: empty sample");
    }
}

} // namespace

ContrastKind ContrastKind::quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("quantile contrast requires 0 < alpha < 1");
    }
    return ContrastKind(QuantileContrast{alpha});
}

std::string ContrastKind::describe() const {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](MeanContrast) { os << "mean"; },
                   [&](MedianContrast) { os << "median"; },
                   [&](QuantileContrast q) { os << "quantile(" << q.alpha << ")"; },
               },
               kind_);
    return os.str();
}

double contrast_eval(const ContrastKind& kind, double y, double theta) {
    const double d = y - theta;
    return std::visit(Overloaded{
                          [d](MeanContrast) { return d * d; },
                          [d](MedianContrast) { return std::abs(d); },
                          [d](QuantileContrast q) { return d * (q.alpha - (d <= 0.0 ? 1.0 : 0.0)); },
                      },
                      kind.kind());
}

double empirical_contrast_risk(std::span<const double> sample, const ContrastKind& kind, double theta) {
    require_nonempty(sample);
    CompensatedSum sum;
    for (double y : sample) {
        sum.add(contrast_eval(kind, y, theta));
    }
    return sum.value() / static_cast<double>(sample.size());
}

double empirical_contrast_minimizer(std::span<const double> sample, const ContrastKind& kind) {
    require_nonempty(sample);
    return std::visit(Overloaded{
                          [&](MeanContrast) { return sample_mean(sample); },
                          [&](MedianContrast) { return empirical_quantile(sample, 0.5); },
                          [&](QuantileContrast q) { return empirical_quantile(sample, q.alpha); },
                      },
                      kind.kind());
}

} // namespace qosa
