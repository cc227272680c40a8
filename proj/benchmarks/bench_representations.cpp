#include "affrigid/group_geometry.hpp"
#include "affrigid/representations.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace affrigid;

static void BM_WignerD(benchmark::State& state)
{
    const RepLabel label = RepLabel::su2(static_cast<int>(state.range(0)));
    const RotationVector k(0.3, -1.1, 0.7);
    for (auto _ : state)
        benchmark::DoNotOptimize(wigner_D(label, k));
}
BENCHMARK(BM_WignerD)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_TwoPolarDecompose(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::MatrixXd phi(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            phi(r, c) = g(rng);
    if (phi.determinant() < 0.0)
        phi.col(0) *= -1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(two_polar_decompose(phi));
}
BENCHMARK(BM_TwoPolarDecompose)->Arg(2)->Arg(3);

static void BM_HaarQuadrature(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(haar_quadrature(Group::SO3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_HaarQuadrature)->Arg(10)->Arg(20);
