#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <gmpxx.h>

#include "spikelab/ensembles.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/phase.hpp"
#include "spikelab/spectra.hpp"

using namespace spikelab;

namespace {

EnsembleSpec spec(int n, int p, std::vector<double> spikes = {}, double sigma = 1.0)
{
    EnsembleSpec s;
    s.n = n;
    s.p = p;
    s.spikes = std::move(spikes);
    s.entry_law.sigma = sigma;
    s.seed = 5;
    return s;
}

}  // namespace

TEST(Phase, SquareWhiteEdges)
{
    const PhaseQuantities q = phase_quantities(spec(100, 100));
    EXPECT_DOUBLE_EQ(q.gamma, 1.0);
    EXPECT_DOUBLE_EQ(q.u_plus, 4.0);
    EXPECT_DOUBLE_EQ(q.u_minus, 0.0);
    EXPECT_DOUBLE_EQ(q.w_c, 2.0);
    EXPECT_FALSE(q.tau.has_value());
    EXPECT_DOUBLE_EQ(q.rho_n, 4.0);
    EXPECT_NEAR(q.sigma_n, std::pow(2.0, 4.0 / 3.0), 1e-14);
}

TEST(Phase, SupercriticalLocationAndSpread)
{
    const PhaseQuantities q = phase_quantities(spec(100, 100, {3.0}));
    EXPECT_NEAR(*q.tau, 4.5, 1e-14);
    EXPECT_NEAR(*q.sigma_pi, 3.0 * std::sqrt(3.0) / 2.0, 1e-14);
}

TEST(Phase, AtThresholdLocationMeetsEdge)
{
    const PhaseQuantities q = phase_quantities(spec(100, 100, {2.0}));
    EXPECT_NEAR(*q.tau, 4.0, 1e-14);
    EXPECT_NEAR(q.sigma_pi.value_or(0.0), 0.0, 1e-7);
}

TEST(Phase, NonUnitSigmaScalesEdges)
{
    const PhaseQuantities q = phase_quantities(spec(50, 200, {}, 2.0));
    EXPECT_NEAR(q.u_plus, 4.0 * 2.25, 1e-13);
    EXPECT_NEAR(q.u_minus, 4.0 * 0.25, 1e-13);
    EXPECT_NEAR(q.w_c, 1.5, 1e-14);
    EXPECT_NEAR(q.sigma_n, 4.0 * 0.5 * std::pow(1.5, 4.0 / 3.0), 1e-13);
}

TEST(Phase, EdgeIdentitiesHoldExactly)
{
    // At pi = w_c = 1 + s: tau = sigma^2 (1 + s)^2 and sigma(pi)^2 = 0, in exact rationals.
    for (const mpq_class& s : {mpq_class(1), mpq_class(1, 2), mpq_class(2, 3), mpq_class(3, 7)}) {
        for (const mpq_class& sigma2 : {mpq_class(1), mpq_class(9, 4)}) {
            const mpq_class inv_gamma = s * s;
            const mpq_class w_c = 1 + s;
            EXPECT_EQ(tau_value(w_c, inv_gamma, sigma2), bulk_edge(s, sigma2));
            EXPECT_EQ(sigma_pi_squared(w_c, inv_gamma, sigma2), 0);
            EXPECT_GT(sigma_pi_squared(mpq_class(w_c + mpq_class(1, 100)), inv_gamma, sigma2), 0);
            EXPECT_LT(sigma_pi_squared(mpq_class(w_c - mpq_class(1, 100)), inv_gamma, sigma2), 0);
        }
    }
}

TEST(Phase, TauExceedsEdgeAboveThreshold)
{
    for (double gamma : {1.0, 1.5, 2.0, 4.0, 9.0}) {
        const double w = critical_spike(gamma);
        const double edge = std::pow(1.0 + 1.0 / std::sqrt(gamma), 2.0);
        for (double d : {0.01, 0.3, 2.0, 10.0})
            EXPECT_GT(tau_of(w + d, gamma, 1.0), edge);
        EXPECT_FALSE(sigma_of(w - 0.01, gamma, 1.0).has_value());
    }
}

TEST(Phase, ClassifyExamples)
{
    const RegimeReport white = classify(spec(100, 100));
    EXPECT_EQ(white.leading, Regime::Subcritical);
    EXPECT_EQ(white.multiplicity, 0);
    EXPECT_EQ(white.law, PredictedLaw::TracyWidom);

    const RegimeReport sup = classify(spec(100, 100, {3.0, 1.5}));
    EXPECT_EQ(sup.leading, Regime::Supercritical);
    EXPECT_EQ(sup.multiplicity, 1);
    EXPECT_EQ(sup.law, PredictedLaw::GaussianGk);
    ASSERT_EQ(sup.spike_regimes.size(), 2u);
    EXPECT_EQ(sup.spike_regimes[1], Regime::Subcritical);

    const RegimeReport crit = classify(spec(100, 100, {2.0}));
    EXPECT_EQ(crit.leading, Regime::Critical);
    EXPECT_EQ(crit.law, PredictedLaw::BbpFk);

    const RegimeReport sub = classify(spec(100, 100, {1.5}));
    EXPECT_EQ(sub.leading, Regime::Subcritical);
    EXPECT_EQ(sub.law, PredictedLaw::TracyWidom);
}

TEST(Phase, ClassifyCountsTiedSpikes)
{
    EXPECT_EQ(classify(spec(100, 100, {3.0, 3.0, 1.5})).multiplicity, 2);
    EXPECT_EQ(classify(spec(100, 100, {3.0 + 1e-13, 3.0})).multiplicity, 2);
    EXPECT_EQ(classify(spec(100, 100, {3.0 + 1e-6, 3.0})).multiplicity, 1);
}

TEST(Phase, AsLimitFollowsRegime)
{
    EXPECT_NEAR(as_limit(spec(100, 100, {3.0})), 4.5, 1e-14);
    EXPECT_NEAR(as_limit(spec(100, 100, {1.5})), 4.0, 1e-14);
    EXPECT_NEAR(as_limit(spec(100, 100)), 4.0, 1e-14);
}

TEST(Phase, ExactCriticalSpike)
{
    EXPECT_EQ(exact_critical_spike(200, 800).value(), 1.5);
    EXPECT_EQ(exact_critical_spike(100, 100).value(), 2.0);
    EXPECT_EQ(exact_critical_spike(8, 18).value(), 1.0 + 2.0 / 3.0);
    EXPECT_FALSE(exact_critical_spike(200, 400).has_value());
    EXPECT_EQ(classify(spec(200, 800, {*exact_critical_spike(200, 800)})).leading, Regime::Critical);
}

TEST(Phase, RegimeNamesRoundTrip)
{
    for (Regime r : {Regime::Supercritical, Regime::Critical, Regime::Subcritical})
        EXPECT_EQ(parse_regime(to_string(r)), r);
    EXPECT_THROW(parse_regime("hot"), Error);
}

TEST(MarchenkoPastur, CdfEndpointsAndMass)
{
    for (double gamma : {1.0, 2.0, 4.0}) {
        const PhaseQuantities q = phase_quantities(spec(100, static_cast<int>(100 * gamma)));
        EXPECT_NEAR(mp_cdf(q.u_minus, 1.0, gamma), 0.0, 1e-12);
        EXPECT_NEAR(mp_cdf(q.u_plus, 1.0, gamma), 1.0, 1e-10);
        EXPECT_EQ(mp_density(q.u_plus + 0.1, 1.0, gamma), 0.0);
    }
}

TEST(MarchenkoPastur, SquareCaseClosedForm)
{
    // With x = 4 sin^2(theta) the density integrates to 1/2 + 1/pi on [0, 2].
    EXPECT_NEAR(mp_cdf(2.0, 1.0, 1.0), 0.5 + 1.0 / std::numbers::pi, 1e-10);
    EXPECT_NEAR(mp_density(2.0, 1.0, 1.0), 1.0 / (2.0 * std::numbers::pi), 1e-14);
}

TEST(MarchenkoPastur, MatchesEmpiricalSpectrum)
{
    EnsembleSpec s = spec(100, 200);
    int below = 0, total = 0;
    for (int t = 0; t < 60; ++t) {
        for (double l : eigenvalues(build_matrix(s, t)).lambdas) {
            below += l <= 1.5;
            ++total;
        }
    }
    EXPECT_NEAR(below / double(total), mp_cdf(1.5, 1.0, 2.0), 0.01);
}
