#include <gtest/gtest.h>

#include <cmath>

#include "spikelab/errors.hpp"
#include "spikelab/spectra.hpp"

using namespace spikelab;

TEST(Spectra, IdentityAndDiagonal)
{
    const auto id = eigenvalues(Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3))).lambdas;
    ASSERT_EQ(id.size(), 3u);
    for (double l : id)
        EXPECT_NEAR(l, 1.0, 1e-15);

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d.diagonal() << 1.0, 4.0, 0.0;
    const auto ld = eigenvalues(d).lambdas;
    EXPECT_NEAR(ld[0], 4.0, 1e-15);
    EXPECT_NEAR(ld[1], 1.0, 1e-15);
    EXPECT_NEAR(ld[2], 0.0, 1e-15);
}

TEST(Spectra, HermitianTwoByTwo)
{
    Eigen::MatrixXcd h(2, 2);
    h << 2.0, std::complex<double>(0.0, 1.0), std::complex<double>(0.0, -1.0), 2.0;
    const auto l = eigenvalues(h).lambdas;
    EXPECT_NEAR(l[0], 3.0, 1e-14);
    EXPECT_NEAR(l[1], 1.0, 1e-14);
}

TEST(Spectra, EigenvalueSumIsTraceAndOrderDescends)
{
    for (Field f : {Field::Real, Field::Complex}) {
        EnsembleSpec s;
        s.n = 40;
        s.p = 70;
        s.spikes = {3.0};
        s.field = f;
        s.seed = 9;
        const MatrixDraw d = build_matrix(s, 2);
        const auto l = eigenvalues(d).lambdas;
        double sum = 0.0;
        for (std::size_t i = 0; i < l.size(); ++i) {
            sum += l[i];
            if (i > 0) {
                EXPECT_GE(l[i - 1], l[i]);
            }
        }
        EXPECT_NEAR(sum, d.trace(), 1e-10 * d.trace());
        EXPECT_GE(l.back(), -1e-12);
    }
}

TEST(Spectra, SpikedSpectrumInterlacesWithWhiteBlock)
{
    // The block of V without the spiked coordinate is white; Cauchy interlacing bounds lambda_2 by its top eigenvalue.
    EnsembleSpec s;
    s.n = 30;
    s.p = 30;
    s.spikes = {3.0};
    s.seed = 4;
    for (std::uint64_t t = 0; t < 5; ++t) {
        const MatrixDraw d = build_matrix(s, t);
        const auto& v = std::get<ComplexDraw>(d.data).v;
        const auto full = eigenvalues(d).lambdas;
        const auto block = eigenvalues(Eigen::MatrixXcd(v.bottomRightCorner(29, 29))).lambdas;
        for (std::size_t i = 0; i < block.size(); ++i) {
            EXPECT_GE(full[i], block[i] - 1e-12);
            EXPECT_LE(full[i + 1], block[i] + 1e-12);
        }
    }
}

TEST(Spectra, DoubledEmbeddingCollapsesToHermitianSpectrum)
{
    EnsembleSpec s;
    s.n = 12;
    s.p = 20;
    s.seed = 4;
    const MatrixDraw draw = build_matrix(s, 0);
    const auto& v = std::get<ComplexDraw>(draw.data).v;
    Eigen::MatrixXd big(24, 24);
    big << v.real(), -v.imag(), v.imag(), v.real();
    const auto collapsed = collapse_doubled(eigenvalues(big).lambdas).lambdas;
    const auto direct = eigenvalues(v).lambdas;
    ASSERT_EQ(collapsed.size(), direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i)
        EXPECT_NEAR(collapsed[i], direct[i], 1e-12);
}

TEST(Spectra, RescaleCentersAtEdgeAndLocation)
{
    EnsembleSpec s;
    s.n = 64;
    s.p = 64;
    EigenSample at_edge{{4.0, 3.0}};
    const auto sub = rescale(at_edge, s, Regime::Subcritical, 2);
    EXPECT_NEAR(sub.xi[0], 0.0, 1e-14);
    EXPECT_NEAR(sub.xi[1], -16.0 / std::pow(2.0, 4.0 / 3.0), 1e-12);

    s.spikes = {3.0};
    const double sig = 3.0 * std::sqrt(3.0) / 2.0;
    EigenSample sample{{4.5 + sig / 8.0, 4.0}};
    EXPECT_NEAR(rescale(sample, s, Regime::Supercritical, 1).xi[0], 1.0, 1e-12);
    s.field = Field::Real;
    EXPECT_NEAR(rescale(sample, s, Regime::Supercritical, 1).xi[0], 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Spectra, RescaleRejectsInconsistentRequests)
{
    EnsembleSpec s;
    s.n = 4;
    s.p = 4;
    EigenSample sample{{4.0, 3.0, 2.0, 1.0}};
    EXPECT_THROW(rescale(sample, s, Regime::Supercritical, 1), RegimeError);
    EXPECT_THROW(rescale(sample, s, Regime::Subcritical, 5), DimensionError);
    EXPECT_THROW(rescale(sample, s, Regime::Subcritical, 0), DimensionError);
}
