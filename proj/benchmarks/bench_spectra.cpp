#include "affrigid/channel2d.hpp"
#include "affrigid/spectra.hpp"
#include "affrigid/tridiagonal.hpp"

#include <benchmark/benchmark.h>

using namespace affrigid;

namespace {

ChannelOperator1D channel(double h)
{
    GridSpec1D g;
    g.h = h;
    return assemble_2d_channel(ModelKind::AffAff, ModelParams{}, 2, 2, g, {}, {});
}

} // namespace

static void BM_TridiagonalQL(benchmark::State& state)
{
    const auto op = symmetrize(channel(40.0 / static_cast<double>(state.range(0))));
    const Tridiagonal T = op.matrix();
    for (auto _ : state)
        benchmark::DoNotOptimize(tridiagonal_ql(T.diag, T.super, false));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagonalQL)->RangeMultiplier(2)->Range(500, 4000)->Complexity();

static void BM_PencilBisection(benchmark::State& state)
{
    const auto op = channel(40.0 / static_cast<double>(state.range(0)));
    const auto p = discretize_weighted(op.x_sector, op.h);
    for (auto _ : state)
        benchmark::DoNotOptimize(pencil_lowest(p.K, p.M, 5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PencilBisection)->RangeMultiplier(2)->Range(500, 8000)->Complexity();

static void BM_Solve1D(benchmark::State& state)
{
    const auto op = channel(40.0 / static_cast<double>(state.range(0)));
    const Form form = state.range(1) == 0 ? Form::Weighted : Form::Symmetrized;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_1d(op, 5, form));
}
BENCHMARK(BM_Solve1D)->Args({1000, 0})->Args({1000, 1})->Args({4000, 0})->Args({4000, 1});
