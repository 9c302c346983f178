#include <gtest/gtest.h>

#include <cmath>

#include "spikelab/dyck.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/genfun.hpp"

using namespace spikelab;
using namespace spikelab::genfun;

namespace {

Rational pow_q(const Rational& x, int k)
{
    Rational r = 1;
    for (int i = 0; i < k; ++i)
        r *= x;
    return r;
}

const std::vector<Rational>& gammas()
{
    static const std::vector<Rational> g{Rational(1), Rational(2), Rational(4), Rational(3, 2)};
    return g;
}

}  // namespace

TEST(Series, ArithmeticIsExact)
{
    Series a(std::vector<Rational>{Rational(2), Rational(1, 3), Rational(-5, 7), Rational(4)});
    const Series one = a * a.inverse();
    EXPECT_EQ(one[0], 1);
    for (std::size_t n = 1; n <= one.order(); ++n)
        EXPECT_EQ(one[n], 0);
    EXPECT_EQ(a.shift(1)[1], 2);
    EXPECT_EQ(a.shift(1).order(), a.order());
    const Series d = a.derivative();
    EXPECT_EQ(d.order(), 2u);
    EXPECT_EQ(d[2], 12);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((a * Rational(3))[1], 1);
    EXPECT_EQ(a.truncated(1).order(), 1u);
    EXPECT_THROW(Series(std::vector<Rational>{Rational(0), Rational(1)}).inverse(), DomainError);
}

TEST(GenFun, GIsCatalanForSquareCase)
{
    const Series g = series_G(Rational(1), 12);
    const Series gt = series_G_tilde(Rational(1), 12);
    for (int n = 0; n <= 12; ++n) {
        EXPECT_EQ(g[static_cast<std::size_t>(n)], Rational(dyck::catalan(n)));
        EXPECT_EQ(gt[static_cast<std::size_t>(n)], Rational(dyck::catalan(n)));
    }
}

TEST(GenFun, GCoefficientsCountOddMarks)
{
    EXPECT_EQ(series_G(Rational(2), 4)[2], Rational(3, 4));
    for (const Rational& gamma : gammas()) {
        const Series g = series_G(gamma, 9);
        const Rational inv = 1 / gamma;
        for (int n = 1; n <= 9; ++n) {
            Rational sum = 0;
            for (const auto& path : dyck::enumerate_paths(n))
                sum += pow_q(inv, dyck::path_stats(path).odd_marked);
            EXPECT_EQ(g[static_cast<std::size_t>(n)], sum) << "gamma=" << gamma << " n=" << n;
        }
    }
}

TEST(GenFun, FunctionalEquationsHaveZeroResidual)
{
    const std::size_t order = 60;
    const Rational pi1(3);
    for (const Rational& gamma : gammas()) {
        const Series g = series_G(gamma, order);
        const Series gt = series_G_tilde(gamma, order);
        const Series f = series_F(pi1, gamma, order);
        Series one(order);
        one[0] = 1;
        EXPECT_TRUE((gt - one - (g * gt).shift(1)).is_zero());
        EXPECT_TRUE((g - one - (gt * g).shift(1) * (1 / gamma)).is_zero());
        EXPECT_TRUE((f - one * pi1 - (g * f).shift(1) * pi1).is_zero());
        EXPECT_EQ(f[0], pi1);
    }
}

TEST(GenFun, KAndHFollowDefinitions)
{
    const std::size_t order = 30;
    for (const Rational& gamma : gammas()) {
        const Series g = series_G(gamma, order);
        const Series k = series_K(gamma, order);
        EXPECT_EQ(k[0], 0);
        for (std::size_t n = 1; n <= order; ++n)
            EXPECT_EQ(k[n], Rational(static_cast<long>(n)) * g[n - 1]);
        const Rational pi1(7, 5);
        EXPECT_EQ(series_H(pi1, gamma, order), series_F(pi1, gamma, order) * k);
    }
}

TEST(GenFun, AlgebraicRelationMatchesRecurrence)
{
    for (const Rational& gamma : gammas()) {
        const Series u = series_U_algebraic(gamma, 30);
        const Series zg = series_G(gamma, 30).shift(1);
        EXPECT_EQ(u, zg) << "gamma=" << gamma;
    }
}

TEST(GenFun, CoefficientsMatchDirectSum)
{
    for (const Rational& gamma : {Rational(1), Rational(2), Rational(2, 3)}) {
        for (const Rational& pi1 : {Rational(3), Rational(3, 2), Rational(1)}) {
            const SeriesCoeffs c = coeffs_a(pi1, gamma, 1.0, 6);
            EXPECT_EQ(c.a[0], 0);
            for (int n = 1; n <= 6; ++n) {
                EXPECT_EQ(c.a[static_cast<std::size_t>(n)], direct_sum_a(n, pi1, gamma))
                    << "gamma=" << gamma << " pi1=" << pi1 << " n=" << n;
                EXPECT_GT(c.a[static_cast<std::size_t>(n)], 0);
            }
        }
    }
}

TEST(GenFun, ScaledCoefficientsUseSigma)
{
    const SeriesCoeffs c = coeffs_a(Rational(3), Rational(1), 1.5, 20);
    for (int n = 1; n <= 20; ++n) {
        const double expected = std::pow(1.5, 2 * n) * c.a[static_cast<std::size_t>(n)].get_d();
        EXPECT_NEAR(c.a_prime[static_cast<std::size_t>(n)], expected, 1e-12 * expected);
        EXPECT_NEAR(c.log_a_prime[static_cast<std::size_t>(n)], std::log(expected), 1e-10);
    }
}

TEST(GenFun, SupercriticalGrowthApproachesTau)
{
    const SeriesCoeffs c = coeffs_a(Rational(3), Rational(1), 1.0, 160);
    const GrowthReport g = growth_rate(c, 20);
    EXPECT_NEAR(g.ratio, 4.5, 0.02 * 4.5);
    EXPECT_DOUBLE_EQ(g.u_plus, 4.0);
    EXPECT_EQ(g.ratios.size(), 160u);
}

TEST(GenFun, SubcriticalGrowthApproachesEdge)
{
    const SeriesCoeffs c = coeffs_a(Rational(3, 2), Rational(1), 1.0, 160);
    const GrowthReport g = growth_rate(c, 20);
    EXPECT_NEAR(g.ratio, 4.0, 0.02 * 4.0);
    const double a = g.sqrt_corrected[140];
    const double b = g.sqrt_corrected[160];
    EXPECT_GT(a, 0.0);
    EXPECT_LT(std::abs(b / a - 1.0), 0.05);
}

TEST(GenFun, LogRationalHandlesHugeValues)
{
    const Rational q = pow_q(Rational(3, 2), 3000);
    EXPECT_NEAR(log_rational(q), 3000.0 * std::log(1.5), 1e-9);
    EXPECT_NEAR(log_rational(Rational(1, 7)), -std::log(7.0), 1e-15);
    EXPECT_THROW(log_rational(Rational(0)), DomainError);
}

TEST(GenFun, RejectsExcessiveOrder)
{
    EXPECT_THROW(series_G(Rational(1), 401), DomainError);
    EXPECT_THROW(growth_rate(coeffs_a(Rational(3), Rational(1), 1.0, 10), 6), DomainError);
}
