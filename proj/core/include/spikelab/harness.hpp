#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "spikelab/ensembles.hpp"
#include "spikelab/phase.hpp"
#include "spikelab/stats.hpp"

namespace spikelab {

struct ExperimentPlan {
    EnsembleSpec spec;
    int trials = 1000;
    int k_top = 1;
    std::optional<Regime> regime_override;
    std::string output_path;  ///< results CSV; empty disables persistence
    int workers = 0;          ///< 0 = all cores

    /// Throws DomainError unless trials >= 100 and 1 <= k_top <= min(8, n).
    void validate() const;
    Regime regime() const;

    friend bool operator==(const ExperimentPlan&, const ExperimentPlan&) = default;
};

struct TrialResult {
    int trial = 0;
    std::vector<double> lambdas;  ///< top k, descending
    std::vector<double> xi;       ///< rescaled top k

    friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct ExperimentResult {
    ExperimentPlan plan;
    Regime regime = Regime::Subcritical;
    PhaseQuantities phase;
    std::vector<TrialResult> trials;  ///< ascending trial index
    bool complete = true;

    /// Empirical CDF of xi_{index+1} over the completed trials.
    EmpiricalCDF xi_cdf(int index) const;
    std::vector<double> lambda_column(int index) const;
    std::vector<double> xi_column(int index) const;
};

/// Runs trials 0..plan.trials-1. Trial t uses the RNG stream (seed, t) only,
/// so the result is independent of the worker count. When `stop` becomes
/// true, finished trials are kept, `complete` is false, and the partial
/// result is still persisted.
ExperimentResult run_experiment(const ExperimentPlan& plan, const std::atomic<bool>* stop = nullptr);

/// Flag set by the SIGINT handler installed with install_interrupt_handler().
std::atomic<bool>& interrupt_flag();
void install_interrupt_handler();

struct VarianceRow {
    int n = 0;
    LawKind law = LawKind::Gaussian;
    int power = 0;
    double scale = 1.0;
    double mean = 0.0;
    double variance = 0.0;
    double variance_stderr = 0.0;
};

struct VarianceReport {
    std::vector<VarianceRow> rows;
    double trend_slope = 0.0;    ///< d log(variance) / d log(n), weighted over all rows
    double trend_stderr = 0.0;
    double max_law_gap = 0.0;    ///< largest |var_a - var_b| / pooled stderr at equal n
    bool bounded = false;
    bool laws_agree = false;
    bool passed() const { return bounded && laws_agree; }
};

struct VarianceOptions {
    std::vector<int> sizes{50, 100, 200};
    std::vector<LawKind> laws{LawKind::Gaussian, LawKind::ThreePointMatch};
    /// Largest admissible log-log growth of the variance over the sizes.
    double max_trend_slope = 0.25;
    double max_law_gap = 4.0;
};

/// Variance of Tr (V_N / scale)^{s_N} over the sizes and laws in `options`;
/// every size keeps the plan's gamma_N = p / n and spikes.
VarianceReport variance_check(const ExperimentPlan& plan, double c, const VarianceOptions& options = {});

}  // namespace spikelab
