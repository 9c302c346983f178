#include "spikelab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <csignal>

#include "spikelab/errors.hpp"
#include "spikelab/momentlab.hpp"
#include "spikelab/parallel.hpp"
#include "spikelab/persistence.hpp"
#include "spikelab/spectra.hpp"

namespace spikelab {

void ExperimentPlan::validate() const
{
    spec.validate();
    if (trials < 100)
        throw DomainError("experiment plan: trials must be at least 100");
    if (k_top < 1 || k_top > 8 || k_top > spec.n)
        throw DomainError("experiment plan: k_top must lie in [1, min(8, n)]");
    if (workers < 0)
        throw DomainError("experiment plan: workers must be non-negative");
}

Regime ExperimentPlan::regime() const
{
    return regime_override ? *regime_override : classify(spec).leading;
}

std::vector<double> ExperimentResult::lambda_column(int index) const
{
    std::vector<double> out;
    out.reserve(trials.size());
    for (const TrialResult& t : trials)
        out.push_back(t.lambdas.at(static_cast<std::size_t>(index)));
    return out;
}

std::vector<double> ExperimentResult::xi_column(int index) const
{
    std::vector<double> out;
    out.reserve(trials.size());
    for (const TrialResult& t : trials)
        out.push_back(t.xi.at(static_cast<std::size_t>(index)));
    return out;
}

EmpiricalCDF ExperimentResult::xi_cdf(int index) const
{
    return EmpiricalCDF(xi_column(index));
}

ExperimentResult run_experiment(const ExperimentPlan& plan, const std::atomic<bool>* stop)
{
    plan.validate();
    ExperimentResult result;
    result.plan = plan;
    result.regime = plan.regime();
    result.phase = phase_quantities(plan.spec);

    const auto count = static_cast<std::size_t>(plan.trials);
    std::vector<TrialResult> slots(count);
    std::vector<char> done(count, 0);
    parallel_for(
        count, plan.workers,
        [&](std::size_t t) {
            const EigenSample sample = eigenvalues(build_matrix(plan.spec, t));
            const RescaledSample xi = rescale(sample, plan.spec, result.regime, plan.k_top);
            TrialResult& slot = slots[t];
            slot.trial = static_cast<int>(t);
            slot.lambdas.assign(sample.lambdas.begin(), sample.lambdas.begin() + plan.k_top);
            slot.xi = xi.xi;
            done[t] = 1;
        },
        stop);

    for (std::size_t t = 0; t < count; ++t) {
        if (done[t])
            result.trials.push_back(std::move(slots[t]));
        else
            result.complete = false;
    }
    if (!plan.output_path.empty())
        save_experiment(result, plan.output_path);
    return result;
}

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int)
{
    g_interrupted.store(true);
}

}  // namespace

std::atomic<bool>& interrupt_flag()
{
    return g_interrupted;
}

void install_interrupt_handler()
{
    std::signal(SIGINT, on_interrupt);
}

VarianceReport variance_check(const ExperimentPlan& plan, double c, const VarianceOptions& options)
{
    plan.validate();
    if (options.sizes.size() < 2 || options.laws.empty())
        throw DomainError("variance_check: need at least two sizes and one law");
    const double gamma = plan.spec.gamma_n();
    VarianceReport report;
    for (int n : options.sizes) {
        EnsembleSpec spec = plan.spec;
        spec.n = n;
        spec.p = static_cast<int>(std::lround(gamma * n));
        const Regime regime = classify(spec).leading;
        const int power = moments::moment_power(regime, n, c);
        const double scale = moments::moment_scale(spec);
        for (std::size_t l = 0; l < options.laws.size(); ++l) {
            const LawKind law = options.laws[l];
            spec.entry_law.kind = law;
            // Independent streams per law; shared blocks would correlate the estimates.
            spec.seed = plan.spec.seed + 0x9E3779B97F4A7C15ULL * l;
            const moments::MomentEstimate est =
                moments::trace_power_statistics(spec, power, scale, plan.trials, plan.workers);
            report.rows.push_back({n, law, power, scale, est.mean, est.variance, est.variance_stderr});
        }
    }

    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> sigmas;
    for (const VarianceRow& row : report.rows) {
        if (!(row.variance > 0.0))
            throw DomainError("variance_check: degenerate zero variance");
        xs.push_back(std::log(static_cast<double>(row.n)));
        ys.push_back(std::log(row.variance));
        sigmas.push_back(std::max(row.variance_stderr / row.variance, 1e-12));
    }
    const LinearFit fit = linear_fit(xs, ys, sigmas);
    report.trend_slope = fit.slope;
    report.trend_stderr = fit.slope_stderr;
    report.bounded = fit.slope < options.max_trend_slope;

    for (std::size_t a = 0; a < report.rows.size(); ++a) {
        for (std::size_t b = a + 1; b < report.rows.size(); ++b) {
            const VarianceRow& ra = report.rows[a];
            const VarianceRow& rb = report.rows[b];
            if (ra.n != rb.n)
                continue;
            const double pooled = std::hypot(ra.variance_stderr, rb.variance_stderr);
            const double gap = pooled > 0.0 ? std::abs(ra.variance - rb.variance) / pooled : 0.0;
            report.max_law_gap = std::max(report.max_law_gap, gap);
        }
    }
    report.laws_agree = report.max_law_gap < options.max_law_gap;
    return report;
}

}  // namespace spikelab
