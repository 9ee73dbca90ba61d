#include "qosa/contrast.hpp"
#include "qosa/empirical.hpp"
#include "qosa/error.hpp"
#include "qosa/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace {

using namespace qosa;

std::vector<double> exp_draws(std::uint64_t seed, std::size_t n) {
    RandomStream s(seed);
    return sample(InputDistribution::exponential(1.0), s, n);
}

TEST(Contrast, PointValues) {
    const auto q = ContrastKind::quantile(0.5);
    EXPECT_DOUBLE_EQ(contrast_eval(q, 2.0, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(contrast_eval(q, 1.0, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(contrast_eval(ContrastKind::mean(), 3.0, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(contrast_eval(ContrastKind::median(), 3.0, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(contrast_eval(ContrastKind::quantile(0.9), 0.0, 1.0), 0.1);
    EXPECT_DOUBLE_EQ(contrast_eval(ContrastKind::quantile(0.9), 1.0, 0.0), 0.9);
}

TEST(Contrast, RejectsLevelOutsideUnitInterval) {
    EXPECT_THROW(ContrastKind::quantile(0.0), InvalidArgument);
    EXPECT_THROW(ContrastKind::quantile(1.0), InvalidArgument);
    EXPECT_THROW(ContrastKind::quantile(-0.3), InvalidArgument);
    EXPECT_THROW(ContrastKind::quantile(std::nan("")), InvalidArgument);
}

TEST(Contrast, NonNegativeAndZeroOnlyAtTheta) {
    RandomStream s(3);
    const ContrastKind kinds[] = {ContrastKind::mean(), ContrastKind::median(), ContrastKind::quantile(0.1),
                                  ContrastKind::quantile(0.7)};
    for (int i = 0; i < 2000; ++i) {
        const double y = 10.0 * s.uniform() - 5.0;
        const double t = 10.0 * s.uniform() - 5.0;
        for (const auto& k : kinds) {
            const double v = contrast_eval(k, y, t);
            ASSERT_GE(v, 0.0);
            ASSERT_EQ(v == 0.0, y == t);
            ASSERT_EQ(contrast_eval(k, t, t), 0.0);
        }
    }
}

TEST(Contrast, EmpiricalRisk) {
    const std::vector<double> v{1.0, 2.0, 3.0};
    EXPECT_DOUBLE_EQ(empirical_contrast_risk(v, ContrastKind::mean(), 2.0), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(empirical_contrast_risk(v, ContrastKind::median(), 2.0), 2.0 / 3.0);
    const std::vector<double> w{0.0, 1.0};
    EXPECT_DOUBLE_EQ(empirical_contrast_risk(w, ContrastKind::quantile(0.5), 0.0), 0.25);
    EXPECT_THROW(empirical_contrast_risk(std::vector<double>{}, ContrastKind::mean(), 0.0), InvalidArgument);
}

TEST(Contrast, Minimizers) {
    EXPECT_DOUBLE_EQ(empirical_contrast_minimizer(std::vector<double>{1, 2, 3}, ContrastKind::mean()), 2.0);
    EXPECT_EQ(empirical_contrast_minimizer(std::vector<double>{1, 2, 3, 4}, ContrastKind::quantile(0.5)), 2.0);
    EXPECT_EQ(empirical_contrast_minimizer(std::vector<double>{1, 2, 3, 4}, ContrastKind::median()), 2.0);
    for (const auto& k : {ContrastKind::mean(), ContrastKind::median(), ContrastKind::quantile(0.3)}) {
        EXPECT_EQ(empirical_contrast_minimizer(std::vector<double>{5.0}, k), 5.0);
    }
    EXPECT_THROW(empirical_contrast_minimizer(std::vector<double>{}, ContrastKind::median()), InvalidArgument);
}

// Smallest minimizer over the sample points by exhaustive scan.
double scan_minimizer(const std::vector<double>& v, const ContrastKind& k) {
    double best = std::numeric_limits<double>::infinity();
    double arg = 0.0;
    std::vector<double> cand = v;
    std::sort(cand.begin(), cand.end());
    for (double t : cand) {
        const double r = empirical_contrast_risk(v, k, t);
        if (r < best) {
            best = r;
            arg = t;
        }
    }
    return arg;
}

TEST(Contrast, QuantileMinimizerMatchesScan) {
    RandomStream s(12);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(s.uniform() * 60);
        std::vector<double> v(n);
        for (auto& x : v) {
            // Coarse grid so ties occur.
            x = std::floor(s.uniform() * 12.0) - 4.0;
        }
        for (int a = 1; a <= 19; ++a) {
            const double alpha = 0.05 * a;
            const auto k = ContrastKind::quantile(alpha);
            const double m = empirical_contrast_minimizer(v, k);
            ASSERT_EQ(m, empirical_quantile(v, alpha));
            const double rm = empirical_contrast_risk(v, k, m);
            for (double t : v) {
                ASSERT_LE(rm, empirical_contrast_risk(v, k, t) * (1.0 + 1e-12) + 1e-14);
            }
            // Exact-arithmetic ties can be broken by rounding in the risk sums.
            const double sm = scan_minimizer(v, k);
            ASSERT_NEAR(empirical_contrast_risk(v, k, sm), rm, 1e-12);
        }
    }
}

TEST(Contrast, MeanMinimizerBeatsPerturbations) {
    const auto v = exp_draws(4, 500);
    const double m = empirical_contrast_minimizer(v, ContrastKind::mean());
    const double r = empirical_contrast_risk(v, ContrastKind::mean(), m);
    for (double d : {1e-3, 1e-2, 0.1, 1.0}) {
        EXPECT_LT(r, empirical_contrast_risk(v, ContrastKind::mean(), m + d));
        EXPECT_LT(r, empirical_contrast_risk(v, ContrastKind::mean(), m - d));
    }
}

TEST(Empirical, Cdf) {
    EXPECT_DOUBLE_EQ(empirical_cdf(std::vector<double>{1, 2, 3, 4, 5}, 3.0), 0.6);
    EXPECT_EQ(empirical_cdf(std::vector<double>{1, 2, 3}, 0.0), 0.0);
    EXPECT_EQ(empirical_cdf(std::vector<double>{1, 2, 3}, 3.0), 1.0);
    EXPECT_THROW(empirical_cdf(std::vector<double>{}, 0.0), InvalidArgument);
}

TEST(Empirical, Quantile) {
    EXPECT_EQ(empirical_quantile(std::vector<double>{1, 2, 3, 4, 5}, 0.5), 3.0);
    EXPECT_EQ(empirical_quantile(std::vector<double>{1, 2, 3, 4}, 0.5), 2.0);
    EXPECT_EQ(empirical_quantile(std::vector<double>{7}, 0.01), 7.0);
    EXPECT_EQ(empirical_quantile(std::vector<double>{7}, 0.99), 7.0);
    EXPECT_EQ(empirical_quantile(std::vector<double>{5, 1, 4, 2, 3}, 0.2), 1.0);
    EXPECT_EQ(empirical_quantile(std::vector<double>{5, 1, 4, 2, 3}, 0.2000001), 2.0);
    EXPECT_THROW(empirical_quantile(std::vector<double>{1, 2}, 0.0), InvalidArgument);
    EXPECT_THROW(empirical_quantile(std::vector<double>{1, 2}, 1.0), InvalidArgument);
    EXPECT_THROW(empirical_quantile(std::vector<double>{}, 0.5), InvalidArgument);
}

TEST(Empirical, QuantileIsGeneralizedInverse) {
    RandomStream s(8);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(s.uniform() * 40);
        std::vector<double> v(n);
        for (auto& x : v) {
            x = std::floor(s.uniform() * 10.0);
        }
        const double alpha = 0.001 + 0.998 * s.uniform();
        const double q = empirical_quantile(v, alpha);
        ASSERT_NE(std::find(v.begin(), v.end(), q), v.end());
        ASSERT_GE(empirical_cdf(v, q), alpha);
        for (double x : v) {
            if (x < q) {
                ASSERT_LT(empirical_cdf(v, x), alpha);
            }
        }
    }
}

TEST(Empirical, QuantileAtExactGridLevels) {
    // k/n levels are hit exactly; 0.3 * 10 must give the third value.
    std::vector<double> v{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
    EXPECT_EQ(empirical_quantile(v, 0.3), 3.0);
    EXPECT_EQ(empirical_quantile(v, 0.7), 7.0);
    EXPECT_EQ(empirical_quantile(v, 0.1), 1.0);
}

TEST(Empirical, Cte) {
    const TailMean t = empirical_cte(std::vector<double>{1, 2, 3, 4}, 0.5);
    EXPECT_DOUBLE_EQ(t.value, 3.5);
    EXPECT_EQ(t.exceedances, 2u);
    const TailMean c = empirical_cte(std::vector<double>{2, 2, 2, 2}, 0.3);
    EXPECT_EQ(c.value, 0.0);
    EXPECT_TRUE(c.empty_tail());
    EXPECT_NEAR(empirical_cte(exp_draws(21, 100000), 0.5).value, 1.0 + std::log(2.0), 0.03);
}

TEST(Empirical, CteDominatesMean) {
    RandomStream s(30);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(s.uniform() * 200);
        std::vector<double> v(n);
        for (auto& x : v) {
            x = 6.0 * s.uniform() - 3.0;
        }
        const double alpha = 0.01 + (1.0 - 1.0 / static_cast<double>(n) - 0.02) * s.uniform();
        const TailMean t = empirical_cte(v, alpha);
        ASSERT_FALSE(t.empty_tail());
        ASSERT_GE(t.value, sample_mean(v) - 1e-12);
    }
}

TEST(Empirical, TranslationEquivariance) {
    const auto v = exp_draws(31, 1000);
    const double c = 4.0;
    std::vector<double> w(v);
    for (auto& x : w) {
        x += c;
    }
    for (double alpha : {0.05, 0.3, 0.5, 0.9}) {
        EXPECT_EQ(empirical_quantile(w, alpha), empirical_quantile(v, alpha) + c);
        // The 1/(n(1 - alpha)) normalization is exact only for k/n levels.
        const double shift = c * static_cast<double>(empirical_cte(v, alpha).exceedances) /
                              (static_cast<double>(v.size()) * (1.0 - alpha));
        EXPECT_NEAR(empirical_cte(w, alpha).value, empirical_cte(v, alpha).value + shift, 1e-12);
    }
    for (double alpha : {0.1, 0.5, 0.75}) {
        EXPECT_NEAR(empirical_cte(w, alpha).value, empirical_cte(v, alpha).value + c, 1e-12);
    }
}

TEST(Empirical, TailMeanAbove) {
    const TailMean t = tail_mean_above(std::vector<double>{1, 2, 3, 4}, 2.5, 0.5);
    EXPECT_DOUBLE_EQ(t.value, 3.5);
    EXPECT_EQ(t.exceedances, 2u);
    EXPECT_TRUE(tail_mean_above(std::vector<double>{1, 2}, 2.0, 0.5).empty_tail());
    EXPECT_THROW(tail_mean_above(std::vector<double>{1, 2}, 2.0, 1.0), InvalidArgument);
}

TEST(Empirical, CompensatedSum) {
    CompensatedSum s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    EXPECT_EQ(s.value(), 2.0);
    CompensatedSum t;
    for (int i = 0; i < 10; ++i) {
        t.add(0.1);
    }
    EXPECT_EQ(t.value(), 1.0);
    EXPECT_DOUBLE_EQ(sample_mean(std::vector<double>{1, 2, 3, 4}), 2.5);
    EXPECT_THROW(sample_mean(std::vector<double>{}), InvalidArgument);
}

} // namespace
