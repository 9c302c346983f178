#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>

#include "spikelab/airy.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/quadrature.hpp"

using namespace spikelab;

TEST(Airy, AgreesWithBoost)
{
    for (double u = -30.0; u <= 30.0; u += 0.37) {
        const AiryEval a = airy(u);
        EXPECT_NEAR(a.ai, boost::math::airy_ai(u), 1e-11) << "u=" << u;
        EXPECT_NEAR(a.ai_prime, boost::math::airy_ai_prime(u), 1e-11) << "u=" << u;
    }
}

TEST(Airy, ValueAtZero)
{
    EXPECT_NEAR(airy(0.0).ai, std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(airy(0.0).ai_prime, -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0), 1e-15);
}

TEST(Airy, DecaysMonotonicallyOnPositiveAxis)
{
    double prev = airy(1.0).ai;
    for (double u = 1.1; u <= 30.0; u += 0.1) {
        const double cur = airy(u).ai;
        EXPECT_LT(cur, prev);
        EXPECT_GT(cur, 0.0);
        prev = cur;
    }
}

TEST(Airy, SatisfiesAiryEquation)
{
    const double h = 1e-5;
    for (double u = -12.0; u <= 8.0; u += 0.25) {
        const double second = (airy(u + h).ai_prime - airy(u - h).ai_prime) / (2.0 * h);
        EXPECT_NEAR(second, u * airy(u).ai, 1e-8 * std::max(1.0, std::abs(u))) << "u=" << u;
    }
}

TEST(Airy, TailIntegral)
{
    EXPECT_NEAR(airy_tail_integral(0.0), 1.0 / 3.0, 1e-13);
    for (double u : {-20.0, -7.5, -2.0, 1.0, 4.0}) {
        const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [](double t) { return boost::math::airy_ai(t); }, u, 30.0, 15, 1e-13);
        EXPECT_NEAR(airy_tail_integral(u), ref, 1e-10) << "u=" << u;
    }
}

TEST(Airy, BatchTailMatchesPointwise)
{
    const std::vector<double> xs{-9.0, -3.5, 0.0, 2.0, 6.0};
    const auto batch = airy_tail_integrals(xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
        EXPECT_NEAR(batch[i], airy_tail_integral(xs[i]), 1e-13);
}

TEST(Airy, RejectsOutOfRange)
{
    EXPECT_THROW(airy(31.0), DomainError);
    EXPECT_THROW(airy_tail_integral(-31.0), DomainError);
}

TEST(GaussLegendre, ExactForDegreeTwoMMinusOne)
{
    for (int m : {1, 4, 12, 48}) {
        const QuadratureRule r = gauss_legendre(m, -1.0, 3.0);
        double total = 0.0, top = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            total += r.weights[i];
            top += r.weights[i] * std::pow(r.nodes[i], 2 * m - 1);
        }
        EXPECT_NEAR(total, 4.0, 1e-13);
        const double exact = (std::pow(3.0, 2 * m) - 1.0) / (2 * m);
        EXPECT_NEAR(top, exact, 1e-12 * std::abs(exact));
    }
}
