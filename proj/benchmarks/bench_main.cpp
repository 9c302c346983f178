#include <benchmark/benchmark.h>

#include "spikelab/ensembles.hpp"
#include "spikelab/genfun.hpp"
#include "spikelab/limitlaws.hpp"
#include "spikelab/momentlab.hpp"
#include "spikelab/spectra.hpp"

using namespace spikelab;

namespace {

EnsembleSpec spec_for(int n, Field field)
{
    EnsembleSpec s;
    s.n = n;
    s.p = 2 * n;
    s.spikes = {3.0};
    s.field = field;
    s.seed = 1;
    return s;
}

void BM_BuildMatrix(benchmark::State& state)
{
    const EnsembleSpec s = spec_for(static_cast<int>(state.range(0)), state.range(1) ? Field::Complex : Field::Real);
    std::uint64_t trial = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(build_matrix(s, trial++));
}
BENCHMARK(BM_BuildMatrix)->ArgsProduct({{50, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Eigenvalues(benchmark::State& state)
{
    const EnsembleSpec s = spec_for(static_cast<int>(state.range(0)), state.range(1) ? Field::Complex : Field::Real);
    const MatrixDraw draw = build_matrix(s, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(eigenvalues(draw));
}
BENCHMARK(BM_Eigenvalues)->ArgsProduct({{50, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_TracyWidomGue(benchmark::State& state)
{
    double x = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tw_gue_cdf(x));
        x = x > 2.0 ? -3.0 : x + 0.37;
    }
}
BENCHMARK(BM_TracyWidomGue)->Unit(benchmark::kMicrosecond);

void BM_TracyWidomGuePainleve(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(tw_gue_cdf_painleve(-2.0));
}
BENCHMARK(BM_TracyWidomGuePainleve)->Unit(benchmark::kMillisecond);

void BM_SeriesH(benchmark::State& state)
{
    const auto order = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(genfun::series_H(genfun::Rational(3), genfun::Rational(2), order));
}
BENCHMARK(BM_SeriesH)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_ExactMoment(benchmark::State& state)
{
    moments::MomentRequest req;
    req.spec = spec_for(2, Field::Real);
    req.spec.p = 3;
    req.spec.entry_law = {LawKind::ThreePointMatch, 1.0};
    req.power = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(moments::exact_trace_moment(req));
}
BENCHMARK(BM_ExactMoment)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
