#include "affrigid/nd_operator.hpp"
#include "affrigid/spectra.hpp"

#include <benchmark/benchmark.h>

using namespace affrigid;

namespace {

NdChannelOperator channel(int count, int twice_spin)
{
    ModelParams p;
    p.n = 3;
    NdGridSpec g;
    g.count = {count, count, count};
    const RepLabel l = RepLabel::su2(twice_spin);
    return assemble_nd_channel(ModelKind::AffAff, p, l, l, g);
}

} // namespace

static void BM_NdAssemble(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(channel(static_cast<int>(state.range(0)), 2));
}
BENCHMARK(BM_NdAssemble)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_NdApply(benchmark::State& state)
{
    const auto op = channel(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const Eigen::VectorXcd f = Eigen::VectorXcd::Ones(op.dofs());
    for (auto _ : state)
        benchmark::DoNotOptimize(op.apply(f));
    state.counters["dofs"] = static_cast<double>(op.dofs());
}
BENCHMARK(BM_NdApply)->Args({10, 0})->Args({10, 2})->Args({20, 2})->Args({20, 4})->Unit(benchmark::kMicrosecond);

static void BM_NdMassSolve(benchmark::State& state)
{
    const auto op = channel(static_cast<int>(state.range(0)), 2);
    const Eigen::VectorXcd f = Eigen::VectorXcd::Ones(op.dofs());
    for (auto _ : state)
        benchmark::DoNotOptimize(op.solve_mass(f));
}
BENCHMARK(BM_NdMassSolve)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

static void BM_NdLanczos(benchmark::State& state)
{
    const auto op = channel(static_cast<int>(state.range(0)), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_nd(op, 3));
}
BENCHMARK(BM_NdLanczos)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
