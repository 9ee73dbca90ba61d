#include "qosa/error.hpp"
#include "qosa/models.hpp"
#include "qosa/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace {

using namespace qosa;

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Textbook Vasicek price, independent of the library's rearranged form.
double textbook_price(long double a, long double b, long double s, long double r0, long double tau) {
    const long double B = -std::expm1(-a * tau) / a;
    const long double logA = (b - s * s / (2.0L * a * a)) * (B - tau) - s * s / (4.0L * a) * B * B;
    return static_cast<double>(std::exp(logA - r0 * B));
}

TEST(RandomStream, SameSeedSameSequence) {
    RandomStream a(42);
    RandomStream b(42);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(a.uniform(), b.uniform());
    }
}

TEST(RandomStream, DistinctSeedsDiffer) {
    RandomStream a(1);
    RandomStream b(2);
    EXPECT_NE(a.uniform(), b.uniform());
}

TEST(RandomStream, ChildStreams) {
    RandomStream c0 = RandomStream::child(42, 0);
    RandomStream c1 = RandomStream::child(42, 1);
    RandomStream c0again = RandomStream::child(42, 0);
    RandomStream parent(42);
    int same01 = 0;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t v0 = c0.next_u64();
        same01 += v0 == c1.next_u64();
        ASSERT_EQ(v0, c0again.next_u64());
        EXPECT_NE(v0, parent.next_u64());
    }
    EXPECT_EQ(same01, 0);
}

TEST(RandomStream, UniformInUnitInterval) {
    RandomStream s(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(InputDistribution, RejectsBadParameters) {
    EXPECT_THROW(InputDistribution::uniform(1.0, 1.0), InvalidArgument);
    EXPECT_THROW(InputDistribution::uniform(2.0, 1.0), InvalidArgument);
    EXPECT_THROW(InputDistribution::exponential(0.0), InvalidArgument);
    EXPECT_THROW(InputDistribution::exponential(-1.0), InvalidArgument);
    EXPECT_THROW(InputDistribution::negated_exponential(0.0), InvalidArgument);
    EXPECT_THROW(InputDistribution::exponential(std::nan("")), InvalidArgument);
}

TEST(InputDistribution, RejectsEmptySample) {
    RandomStream s(1);
    EXPECT_THROW(sample(InputDistribution::exponential(1.0), s, 0), InvalidArgument);
}

TEST(InputDistribution, SampleMeans) {
    RandomStream s(11);
    EXPECT_NEAR(mean_of(sample(InputDistribution::uniform(0.0, 1.0), s, 100000)), 0.5, 0.01);
    EXPECT_NEAR(mean_of(sample(InputDistribution::exponential(1.0), s, 100000)), 1.0, 0.02);
    EXPECT_NEAR(mean_of(sample(InputDistribution::negated_exponential(1.0), s, 100000)), -1.0, 0.02);
    EXPECT_NEAR(mean_of(sample(InputDistribution::exponential(4.0), s, 100000)), 0.25, 0.005);
}

TEST(InputDistribution, InverseCdfDraws) {
    RandomStream a(5);
    RandomStream b(5);
    const auto e = InputDistribution::exponential(2.0);
    const auto ne = InputDistribution::negated_exponential(2.0);
    const auto un = InputDistribution::uniform(-3.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double u = b.uniform();
        EXPECT_DOUBLE_EQ(e.draw(a), -std::log(1.0 - u) / 2.0);
        const double u2 = b.uniform();
        EXPECT_DOUBLE_EQ(ne.draw(a), std::log(1.0 - u2) / 2.0);
        const double u3 = b.uniform();
        EXPECT_DOUBLE_EQ(un.draw(a), -3.0 + 8.0 * u3);
    }
}

TEST(InputDistribution, ExponentialKolmogorovSmirnov) {
    RandomStream s(2024);
    std::vector<double> v = sample(InputDistribution::exponential(1.0), s, 100000);
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = -std::expm1(-v[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    EXPECT_LT(d, 0.01);
}

TEST(Models, AdditiveMap) {
    const ModelSpec m = additive_model();
    ASSERT_EQ(m.dimension(), 2u);
    const double x[2] = {1.0, -0.5};
    EXPECT_DOUBLE_EQ(m.evaluate(x), 0.5);
    const double z[2] = {0.0, 0.0};
    EXPECT_DOUBLE_EQ(m.evaluate(z), 0.0);
}

TEST(Models, PairedSampleIsExactAndDeterministic) {
    const ModelSpec m = additive_model();
    RandomStream s1(3);
    RandomStream s2(3);
    const PairedSample a = draw_paired_sample(m, s1, 4);
    const PairedSample b = draw_paired_sample(m, s2, 4);
    EXPECT_EQ(a, b);
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_EQ(a.y[j], a.x(j, 0) + a.x(j, 1));
        EXPECT_EQ(a.y_star[j], a.x_star(j, 0) + a.x_star(j, 1));
        EXPECT_GT(a.x(j, 0), 0.0);
        EXPECT_LT(a.x(j, 1), 0.0);
    }
    EXPECT_NE(a.y, a.y_star);
}

TEST(Models, PairedSampleMomentsAndIndependence) {
    RandomStream s(9);
    const PairedSample p = draw_paired_sample(additive_model(), s, 100000);
    EXPECT_NEAR(mean_of(p.y), 0.0, 0.02);
    const double my = mean_of(p.y);
    const double ms = mean_of(p.y_star);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        sxy += (p.y[j] - my) * (p.y_star[j] - ms);
        sxx += (p.y[j] - my) * (p.y[j] - my);
        syy += (p.y_star[j] - ms) * (p.y_star[j] - ms);
    }
    EXPECT_LT(std::abs(sxy / std::sqrt(sxx * syy)), 0.02);
}

TEST(Models, RejectsEmptyPairedSample) {
    RandomStream s(1);
    EXPECT_THROW(draw_paired_sample(additive_model(), s, 0), InvalidArgument);
}

TEST(Vasicek, ReferencePoint) {
    const VasicekParams p{1.0, 0.5, 0.1, 0.1, 1.0};
    EXPECT_NEAR(vasicek_b_factor(1.0, 1.0), 0.632121, 1e-6);
    EXPECT_NEAR(vasicek_bond_price(p), 0.78167, 1e-5);
    EXPECT_NEAR(vasicek_bond_price(p), textbook_price(1.0L, 0.5L, 0.1L, 0.1L, 1.0L), 1e-14);
}

TEST(Vasicek, MatchesTextbookFormulaOnGrid) {
    for (double a : {1e-3, 0.01, 0.1, 0.5, 1.0, 3.0}) {
        for (double b : {0.0, 0.3, 1.0}) {
            for (double s : {0.05, 0.5, 1.0}) {
                const double ref = textbook_price(a, b, s, 0.1L, 1.0L);
                EXPECT_NEAR(vasicek_bond_price({a, b, s, 0.1, 1.0}), ref, 1e-12 * ref) << a << " " << b << " " << s;
            }
        }
    }
}

TEST(Vasicek, ShortMaturityAndExpiry) {
    EXPECT_NEAR(vasicek_bond_price({1.0, 0.5, 0.1, 0.1, 1e-12}), 1.0, 1e-12);
    EXPECT_EQ(vasicek_bond_price({0.7, 0.5, 0.3, 0.1, 2.0}, 2.0), 1.0);
}

TEST(Vasicek, ZeroVolatility) {
    const double B = vasicek_b_factor(1.0, 1.0);
    EXPECT_NEAR(vasicek_bond_price({1.0, 0.1, 0.0, 0.1, 1.0}), std::exp(0.1 * (B - 1.0) - 0.1 * B), 1e-15);
}

TEST(Vasicek, SmallMeanReversionLimit) {
    const double s = 0.8;
    const double brownian = std::exp(-0.1 + s * s / 6.0);
    EXPECT_NEAR(vasicek_bond_price({0.0, 0.5, s, 0.1, 1.0}), brownian, 1e-15);
    for (double a : {1e-300, 1e-12, 1e-9, 1e-7}) {
        EXPECT_NEAR(vasicek_bond_price({a, 0.5, s, 0.1, 1.0}), brownian, 2.0 * a + 1e-15) << a;
    }
    EXPECT_DOUBLE_EQ(vasicek_b_factor(0.0, 2.0), 2.0);
    // Continuity across the series/closed-form switch.
    for (double a : {0.49, 0.4999999, 0.5, 0.5000001, 0.51}) {
        const double ref = textbook_price(a, 0.5L, s, 0.1L, 1.0L);
        EXPECT_NEAR(vasicek_bond_price({a, 0.5, s, 0.1, 1.0}), ref, 1e-14) << a;
    }
}

TEST(Vasicek, MonotoneInRateAndLevel) {
    RandomStream s(17);
    const double h = 1e-4;
    for (int i = 0; i < 200; ++i) {
        const double a = 0.05 + 0.9 * s.uniform();
        const double b = 0.05 + 0.9 * s.uniform();
        const double sig = 0.05 + 0.9 * s.uniform();
        const double r0 = 0.05 + 0.9 * s.uniform();
        const double p = vasicek_bond_price({a, b, sig, r0, 1.0});
        EXPECT_LT(vasicek_bond_price({a, b, sig, r0 + h, 1.0}), p);
        EXPECT_LT(vasicek_bond_price({a, b + h, sig, r0, 1.0}), p);
    }
}

TEST(Vasicek, RejectsInvalidParameters) {
    EXPECT_THROW(vasicek_bond_price({-0.1, 0.5, 0.1, 0.1, 1.0}), InvalidArgument);
    EXPECT_THROW(vasicek_bond_price({0.1, 0.5, -0.1, 0.1, 1.0}), InvalidArgument);
    EXPECT_THROW(vasicek_bond_price({0.1, 0.5, 0.1, 0.1, 0.0}), InvalidArgument);
    EXPECT_THROW(vasicek_bond_price({0.1, 0.5, 0.1, 0.1, 1.0}, 1.5), InvalidArgument);
    EXPECT_THROW(vasicek_bond_price({0.1, 0.5, 0.1, 0.1, 1.0}, -0.1), InvalidArgument);
    EXPECT_THROW(vasicek_bond_price({0.0, 0.5, 1e200, 0.1, 1.0}), NumericalError);
}

TEST(Vasicek, ModelDrawsFiniteOnUnitCube) {
    const ModelSpec m = vasicek_model();
    ASSERT_EQ(m.dimension(), 3u);
    EXPECT_EQ(m.input_names, (std::vector<std::string>{"a", "b", "sigma"}));
    const double mid[3] = {0.5, 0.5, 0.5};
    const double p = m.evaluate(mid);
    EXPECT_TRUE(std::isfinite(p));
    EXPECT_GT(p, 0.0);
    const double tiny[3] = {1e-12, 0.5, 0.5};
    EXPECT_TRUE(std::isfinite(m.evaluate(tiny)));
    RandomStream s(4);
    const PairedSample ps = draw_paired_sample(m, s, 2000);
    for (double y : ps.y) {
        ASSERT_TRUE(std::isfinite(y));
        ASSERT_GT(y, 0.0);
    }
}

} // namespace
