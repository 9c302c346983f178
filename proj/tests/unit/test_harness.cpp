#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>

#include "spikelab/errors.hpp"
#include "spikelab/harness.hpp"
#include "spikelab/momentlab.hpp"
#include "spikelab/persistence.hpp"

using namespace spikelab;
namespace fs = std::filesystem;

namespace {

ExperimentPlan small_plan(int n, int p, std::vector<double> spikes = {}, int trials = 100)
{
    ExperimentPlan plan;
    plan.spec.n = n;
    plan.spec.p = p;
    plan.spec.spikes = std::move(spikes);
    plan.spec.seed = 2024;
    plan.trials = trials;
    plan.workers = 1;
    return plan;
}

class TempDir {
public:
    TempDir()
        : path_(fs::temp_directory_path() / ("spikelab_harness_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                              ::testing::UnitTest::GetInstance()->current_test_info()->name()))
    {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

}  // namespace

TEST(Harness, ValidateRejectsBadPlans)
{
    ExperimentPlan p = small_plan(4, 4);
    EXPECT_NO_THROW(p.validate());
    p.trials = 99;
    EXPECT_THROW(p.validate(), DomainError);
    p.trials = 100;
    p.k_top = 0;
    EXPECT_THROW(p.validate(), DomainError);
    p.k_top = 5;
    EXPECT_THROW(p.validate(), DomainError);
    ExperimentPlan big = small_plan(20, 20);
    big.k_top = 9;
    EXPECT_THROW(big.validate(), DomainError);
}

TEST(Harness, RegimeComesFromSpecUnlessOverridden)
{
    ExperimentPlan p = small_plan(10, 10, {3.0});
    EXPECT_EQ(p.regime(), Regime::Supercritical);
    p.regime_override = Regime::Subcritical;
    EXPECT_EQ(p.regime(), Regime::Subcritical);
}

TEST(Harness, DegeneratePlanRoundTripsBitExactly)
{
    TempDir dir;
    ExperimentPlan plan = small_plan(4, 4);
    plan.k_top = 2;
    plan.output_path = dir.file("run.csv");
    const ExperimentResult res = run_experiment(plan);
    ASSERT_TRUE(res.complete);
    ASSERT_EQ(res.trials.size(), 100u);
    for (int t = 0; t < 100; ++t)
        EXPECT_EQ(res.trials[static_cast<std::size_t>(t)].trial, t);

    const ExperimentResult back = load_experiment(plan.output_path);
    EXPECT_EQ(back.trials, res.trials);
    EXPECT_EQ(back.plan.spec, res.plan.spec);
    EXPECT_EQ(back.plan.trials, res.plan.trials);
    EXPECT_EQ(back.plan.k_top, 2);
    EXPECT_EQ(back.regime, res.regime);
    EXPECT_EQ(back.complete, true);
    EXPECT_EQ(back.phase.sigma_n, res.phase.sigma_n);
}

TEST(Harness, OutputIsIndependentOfWorkerCount)
{
    TempDir dir;
    ExperimentPlan a = small_plan(12, 24, {2.5}, 120);
    a.k_top = 3;
    a.output_path = dir.file("one.csv");
    ExperimentPlan b = a;
    b.workers = 4;
    b.output_path = dir.file("four.csv");
    run_experiment(a);
    run_experiment(b);
    EXPECT_EQ(read_text(a.output_path), read_text(b.output_path));
    EXPECT_EQ(read_text(manifest_path(a.output_path)), read_text(manifest_path(b.output_path)));
}

TEST(Harness, StopFlagKeepsPartialResult)
{
    TempDir dir;
    ExperimentPlan plan = small_plan(6, 6);
    plan.output_path = dir.file("partial.csv");
    std::atomic<bool> stop{true};
    const ExperimentResult res = run_experiment(plan, &stop);
    EXPECT_FALSE(res.complete);
    EXPECT_LT(res.trials.size(), 100u);
    const ExperimentResult back = load_experiment(plan.output_path);
    EXPECT_FALSE(back.complete);
    EXPECT_EQ(back.trials, res.trials);
}

TEST(Harness, ColumnsAndCdf)
{
    const ExperimentResult res = run_experiment(small_plan(5, 10));
    const auto lam = res.lambda_column(0);
    const auto xi = res.xi_column(0);
    ASSERT_EQ(lam.size(), 100u);
    ASSERT_EQ(xi.size(), 100u);
    const double scale = std::pow(5.0, 2.0 / 3.0) / res.phase.sigma_n;
    EXPECT_NEAR(xi[7], scale * (lam[7] - res.phase.rho_n), 1e-12);
    EXPECT_EQ(res.xi_cdf(0).size(), 100u);
}

TEST(Harness, SupercriticalFluctuationsCenterOnTau)
{
    ExperimentPlan plan = small_plan(100, 100, {3.0}, 200);
    plan.workers = 0;
    const ExperimentResult res = run_experiment(plan);
    double mean = 0.0;
    for (double l : res.lambda_column(0))
        mean += l;
    mean /= 200.0;
    EXPECT_NEAR(mean, 4.5, 0.1);
}

TEST(Harness, VarianceCheckRowsAndFit)
{
    VarianceOptions opt;
    opt.sizes = {10, 20};
    ExperimentPlan plan = small_plan(10, 20, {3.0}, 400);
    plan.workers = 0;
    const VarianceReport r = variance_check(plan, 1.0, opt);
    ASSERT_EQ(r.rows.size(), 4u);
    for (const VarianceRow& row : r.rows) {
        EXPECT_GT(row.variance, 0.0);
        EXPECT_GT(row.variance_stderr, 0.0);
        EXPECT_EQ(row.power, moments::moment_power(Regime::Supercritical, row.n, 1.0));
    }
    EXPECT_EQ(r.rows[0].n, 10);
    EXPECT_EQ(r.rows[2].n, 20);
    EXPECT_GE(r.max_law_gap, 0.0);
    EXPECT_EQ(r.bounded, r.trend_slope < opt.max_trend_slope);
    EXPECT_THROW(variance_check(plan, 1.0, VarianceOptions{{10}}), DomainError);
}

TEST(Harness, VarianceStandardErrorScalesWithTrials)
{
    EnsembleSpec spec = small_plan(6, 12).spec;
    const moments::MomentEstimate a = moments::trace_power_statistics(spec, 1, 1.0, 4000, 1);
    spec.seed += 1;
    const moments::MomentEstimate b = moments::trace_power_statistics(spec, 1, 1.0, 16000, 1);
    EXPECT_NEAR(a.variance_stderr / b.variance_stderr, 2.0, 0.3);
    EXPECT_NEAR(a.variance, b.variance, 4.0 * std::hypot(a.variance_stderr, b.variance_stderr));
}
