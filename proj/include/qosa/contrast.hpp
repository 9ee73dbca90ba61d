#pragma once

#include <span>
#include <string>
#include <variant>

namespace qosa {

struct MeanContrast {};
struct MedianContrast {};
struct QuantileContrast {
    double alpha;
};

/// One of the three classical contrasts: squared error (mean), absolute error
/// (median) and the pinball loss (y - theta)(alpha - 1{y <= theta}) (quantile).
class ContrastKind {
public:
    using Variant = std::variant<MeanContrast, MedianContrast, QuantileContrast>;

    static ContrastKind mean() { return ContrastKind(MeanContrast{}); }
    static ContrastKind median() { return ContrastKind(MedianContrast{}); }
    static ContrastKind quantile(double alpha);

    const Variant& kind() const noexcept { return kind_; }
    std::string describe() const;

private:
    explicit ContrastKind(Variant v) : kind_(v) {}
    Variant kind_;
};

double contrast_eval(const ContrastKind& kind, double y, double theta);

/// (1/n) sum_j psi(y_j, theta).
double empirical_contrast_risk(std::span<const double> sample, const ContrastKind& kind, double theta);

/// Closed-form minimizer of the empirical risk: sample mean, or the smallest
/// empirical quantile (generalized inverse) at 1/2 or alpha.
double empirical_contrast_minimizer(std::span<const double> sample, const ContrastKind& kind);

} // namespace qosa
