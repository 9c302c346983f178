#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "spikelab/errors.hpp"
#include "spikelab/limitlaws.hpp"
#include "spikelab/rng.hpp"
#include "spikelab/stats.hpp"

using namespace spikelab;

namespace {

double kolmogorov_series(double lambda)
{
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k)
        sum += (k % 2 == 1 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
    return sum;
}

std::vector<double> normals(int n, std::uint64_t seed)
{
    CounterRng rng(seed, 0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x)
        v = rng.normal();
    return x;
}

}  // namespace

TEST(Stats, EmpiricalCdfIsRightContinuousStep)
{
    const EmpiricalCDF f({3.0, 1.0, 2.0, 2.0});
    EXPECT_EQ(f(0.5), 0.0);
    EXPECT_EQ(f(1.0), 0.25);
    EXPECT_EQ(f(1.999), 0.25);
    EXPECT_EQ(f(2.0), 0.75);
    EXPECT_EQ(f(3.0), 1.0);
    EXPECT_EQ(f.sorted_samples(), (std::vector<double>{1.0, 2.0, 2.0, 3.0}));
    EXPECT_THROW(EmpiricalCDF({1.0, std::numeric_limits<double>::quiet_NaN()}), DomainError);
}

TEST(Stats, KolmogorovSurvivalMatchesSeries)
{
    for (double lambda : {0.6, 0.9, 1.0, 1.17, 1.19, 1.36, 1.63, 2.5})
        EXPECT_NEAR(kolmogorov_survival(lambda), kolmogorov_series(lambda), 1e-12) << lambda;
    EXPECT_NEAR(kolmogorov_survival(1.3581), 0.05, 1e-4);
    EXPECT_NEAR(kolmogorov_survival(1.6276), 0.01, 1e-4);
    EXPECT_NEAR(kolmogorov_survival(0.2), 1.0, 1e-12);
    EXPECT_NEAR(kolmogorov_survival(0.0), 1.0, 0.0);
}

TEST(Stats, KsAgainstPointMass)
{
    const EmpiricalCDF zeros(std::vector<double>(200, 0.0));
    EXPECT_DOUBLE_EQ(ks_distance(zeros, standard_normal_cdf).distance, 0.5);
}

TEST(Stats, KsAgainstOwnInterpolant)
{
    const std::vector<double> x = normals(500, 5);
    const EmpiricalCDF emp(x);
    DistributionCurve curve;
    const auto& s = emp.sorted_samples();
    for (std::size_t i = 0; i < s.size(); ++i) {
        curve.grid.push_back(s[i]);
        curve.cdf.push_back(static_cast<double>(i + 1) / s.size());
    }
    EXPECT_LE(ks_distance(emp, curve).distance, 1.0 / s.size() + 1e-15);
}

TEST(Stats, KsOfNormalSampleIsSmallWithLargePValue)
{
    const KsResult r = ks_distance(EmpiricalCDF(normals(4000, 8)), standard_normal_cdf);
    EXPECT_EQ(r.n_samples, 4000);
    EXPECT_LT(r.distance, 1.63 / std::sqrt(4000.0));
    EXPECT_GT(r.p_value, 0.01);
}

TEST(Stats, TwoSampleDistance)
{
    const EmpiricalCDF a({1.0, 2.0, 3.0});
    const EmpiricalCDF b({2.5});
    EXPECT_NEAR(ks_two_sample(a, b).distance, 2.0 / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(ks_two_sample(EmpiricalCDF({0.0, 1.0}), EmpiricalCDF({5.0, 6.0})).distance, 1.0);
    EXPECT_DOUBLE_EQ(ks_two_sample(a, a).distance, 0.0);
    const KsResult r = ks_two_sample(EmpiricalCDF(normals(300, 1)), EmpiricalCDF(normals(600, 2)));
    EXPECT_EQ(r.n_samples, 200);
    EXPECT_GT(r.p_value, 0.001);
}

TEST(Stats, Summary)
{
    const Summary s = summarize({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.sd, std::sqrt(5.0 / 3.0));
    EXPECT_DOUBLE_EQ(s.stderr_, std::sqrt(5.0 / 3.0 / 4.0));
    EXPECT_EQ(s.count, 4u);
}

TEST(Stats, LinearFitRecoversExactLine)
{
    const LinearFit f = linear_fit({0.0, 1.0, 2.0, 3.0}, {2.0, 5.0, 8.0, 11.0});
    EXPECT_NEAR(f.slope, 3.0, 1e-14);
    EXPECT_NEAR(f.intercept, 2.0, 1e-14);
    EXPECT_NEAR(f.slope_stderr, 0.0, 1e-12);
}

TEST(Stats, WeightedFitFollowsPreciseYPoints)
{
    const LinearFit f = linear_fit({0.0, 1.0, 2.0}, {0.0, 1.0, 10.0}, {1e-3, 1e-3, 1e3});
    EXPECT_NEAR(f.slope, 1.0, 1e-5);
    EXPECT_NEAR(f.intercept, 0.0, 1e-5);
    // Two unit-sigma points at x = 0, 1: intercept error 1, slope error sqrt(2).
    const LinearFit g = linear_fit({0.0, 1.0}, {0.0, 1.0}, {1.0, 1.0});
    EXPECT_NEAR(g.intercept_stderr, 1.0, 1e-12);
    EXPECT_NEAR(g.slope_stderr, std::sqrt(2.0), 1e-12);
}
