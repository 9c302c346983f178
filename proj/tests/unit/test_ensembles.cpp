#include <gtest/gtest.h>

#include <cmath>

#include "spikelab/ensembles.hpp"
#include "spikelab/errors.hpp"

using namespace spikelab;

namespace {

EnsembleSpec spec(int n, int p, std::vector<double> spikes = {}, Field field = Field::Complex,
                  LawKind law = LawKind::Gaussian)
{
    EnsembleSpec s;
    s.n = n;
    s.p = p;
    s.spikes = std::move(spikes);
    s.field = field;
    s.entry_law.kind = law;
    s.seed = 17;
    return s;
}

}  // namespace

TEST(Ensembles, NamesRoundTrip)
{
    for (Field f : {Field::Real, Field::Complex})
        EXPECT_EQ(parse_field(to_string(f)), f);
    for (LawKind k : {LawKind::Gaussian, LawKind::ThreePointMatch, LawKind::Rademacher})
        EXPECT_EQ(parse_law(to_string(k)), k);
    EXPECT_EQ(parse_law("three_point"), LawKind::ThreePointMatch);
    EXPECT_THROW(parse_law("cauchy"), Error);
}

TEST(Ensembles, ValidateRejectsBadSpecs)
{
    EXPECT_THROW(spec(5, 4).validate(), DimensionError);
    EXPECT_THROW(spec(0, 4).validate(), DimensionError);
    EXPECT_THROW(spec(2, 4, {3.0, 2.0, 1.5}).validate(), DimensionError);
    EXPECT_THROW(spec(4, 4, {0.5}).validate(), DomainError);
    EXPECT_THROW(spec(4, 4, {2.0, 3.0}).validate(), DomainError);
    EnsembleSpec s = spec(4, 4);
    s.entry_law.sigma = 0.0;
    EXPECT_THROW(s.validate(), DomainError);
    EXPECT_NO_THROW(spec(4, 4, {3.0, 3.0}).validate());
}

TEST(Ensembles, DrawIsExactlyHermitianWithRealDiagonal)
{
    const MatrixDraw d = build_matrix(spec(30, 45, {4.0}), 3);
    EXPECT_EQ(d.asymmetry(), 0.0);
    const auto& v = std::get<ComplexDraw>(d.data).v;
    for (int i = 0; i < 30; ++i)
        EXPECT_EQ(v(i, i).imag(), 0.0);
}

TEST(Ensembles, DrawMatchesDefinition)
{
    const EnsembleSpec s = spec(6, 9, {2.5, 1.5});
    const MatrixDraw d = build_matrix(s, 0);
    const auto& draw = std::get<ComplexDraw>(d.data);
    Eigen::VectorXd root(6);
    for (int i = 0; i < 6; ++i)
        root(i) = std::sqrt(s.population_variance(i));
    const Eigen::MatrixXcd expected = root.asDiagonal() * draw.x * draw.x.adjoint() * root.asDiagonal() / 9.0;
    EXPECT_LT((draw.v - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Ensembles, DrawsAreReproducibleAndTrialSpecific)
{
    const EnsembleSpec s = spec(5, 8, {}, Field::Real);
    const auto a = std::get<RealDraw>(build_matrix(s, 11).data);
    const auto b = std::get<RealDraw>(build_matrix(s, 11).data);
    const auto c = std::get<RealDraw>(build_matrix(s, 12).data);
    EXPECT_EQ(a.x, b.x);
    EXPECT_NE(a.x, c.x);
}

TEST(Ensembles, EntryIjUsesBlockIpPlusJ)
{
    const EnsembleSpec s = spec(3, 4, {}, Field::Complex, LawKind::Rademacher);
    const auto d = std::get<ComplexDraw>(build_matrix(s, 5).data);
    const CounterRng rng(s.seed, 5);
    EXPECT_EQ(d.x(2, 1), sample_entry(s.entry_law, s.field, rng.block(2 * 4 + 1)));
}

TEST(Ensembles, DiscreteLawsHaveExactSupportAndFrequencies)
{
    EntryLaw three{LawKind::ThreePointMatch, 1.0};
    CounterRng rng(1, 0);
    int zero = 0;
    const int n = 60000;
    double fourth = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_entry(three, Field::Real, rng).real();
        ASSERT_TRUE(x == 0.0 || std::abs(std::abs(x) - std::sqrt(3.0)) < 1e-15);
        zero += x == 0.0;
        fourth += x * x * x * x;
    }
    EXPECT_NEAR(zero / double(n), 2.0 / 3.0, 0.01);
    EXPECT_NEAR(fourth / n, 3.0, 0.1);

    EntryLaw rad{LawKind::Rademacher, 2.0};
    const auto z = sample_entry(rad, Field::Complex, rng);
    EXPECT_DOUBLE_EQ(std::abs(z.real()), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(std::abs(z.imag()), std::sqrt(2.0));
}

TEST(Ensembles, ComplexPartsShareTheVariance)
{
    EntryLaw law{LawKind::Gaussian, 1.5};
    EXPECT_DOUBLE_EQ(law.part_variance(Field::Real), 2.25);
    EXPECT_DOUBLE_EQ(law.part_variance(Field::Complex), 1.125);
    CounterRng rng(3, 0);
    double m2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        m2 += std::norm(sample_entry(law, Field::Complex, rng));
    EXPECT_NEAR(m2 / n, 2.25, 0.03);
}

TEST(Ensembles, MeanTraceMatchesLinearity)
{
    // E Tr V = sigma^2 (sum of population variances)
    const EnsembleSpec s = spec(4, 6, {3.0}, Field::Real, LawKind::ThreePointMatch);
    const int trials = 4000;
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double tr = build_matrix(s, t).trace();
        sum += tr;
        sum2 += tr * tr;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
    EXPECT_NEAR(mean, 6.0, 4.0 * se);
}

TEST(Ensembles, AssembleFromSampleRejectsWrongShape)
{
    EXPECT_THROW(assemble_from_sample(spec(3, 4), Eigen::MatrixXcd::Zero(4, 3)), DimensionError);
    const MatrixDraw d = assemble_from_sample(spec(2, 2, {}, Field::Real), Eigen::MatrixXcd::Identity(2, 2));
    EXPECT_DOUBLE_EQ(d.trace(), 1.0);
}
