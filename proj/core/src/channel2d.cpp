#include "affrigid/channel2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace affrigid {

std::vector<double> ChannelOperator1D::grid() const
{
    const int N = element_count(x_sector.lo, x_sector.hi, h);
    const double hh = (x_sector.hi - x_sector.lo) / N;
    std::vector<double> x;
    x.reserve(N - 1);
    for (int i = 1; i < N; ++i)
        x.push_back(x_sector.lo + i * hh);
    return x;
}

std::vector<double> ChannelOperator1D::weight() const
{
    std::vector<double> w;
    for (double x : grid())
        w.push_back(x_sector.weight(x));
    return w;
}

std::vector<double> ChannelOperator1D::diag_potential() const
{
    std::vector<double> v;
    for (double x : grid())
        v.push_back(x_sector.potential_at(x));
    return v;
}

ChannelOperator1D assemble_2d_channel(ModelKind kind, const ModelParams& params, int m, int n,
                                      const GridSpec1D& grid, const PotentialSpec& v_dil,
                                      const PotentialSpec& v_sh)
{
    if (params.n != 2)
        throw std::domain_error("planar channels need n = 2");
    check_gates(kind, params);
    if (!(grid.X > 0.0) || !(grid.h > 0.0) || !(grid.q_h > 0.0))
        throw std::domain_error("grid needs X > 0, h > 0 and q_h > 0");
    if (!(grid.q_hi > grid.q_lo))
        throw std::domain_error("dilatation interval needs q_hi > q_lo");

    const DerivedConstants d = derived_constants(params);
    const double hb2 = params.hbar * params.hbar;
    const double sum2 = static_cast<double>(n + m) * (n + m);

    ChannelOperator1D op;
    op.kind = kind;
    op.params = params;
    op.m = m;
    op.n = n;
    op.h = grid.h;
    op.q_h = grid.q_h;

    Sector1D& xs = op.x_sector;
    Sector1D& qs = op.q_sector;
    xs.lo = 0.0;
    xs.hi = grid.X;
    xs.potential = v_sh;
    xs.nu = std::abs(n - m) / 2.0;
    qs.potential = v_dil;

    if (kind == ModelKind::DAlembert) {
        xs.profile = Profile::Linear;
        xs.coeff = hb2 / params.I;
        qs.profile = Profile::Linear;
        qs.coeff = hb2 / params.I;
        qs.nu = std::abs(n + m) / 2.0;
        qs.lo = 0.0;
        qs.hi = grid.X;
        op.q_h = grid.h;
        return op;
    }

    xs.profile = Profile::Sinh;
    qs.profile = Profile::Flat;
    qs.lo = grid.q_lo;
    qs.hi = grid.q_hi;
    if (kind == ModelKind::AffAff) {
        xs.coeff = hb2 / params.A;
        qs.coeff = hb2 / (4.0 * (params.A + 2.0 * params.B));
    } else {
        xs.coeff = hb2 / d.alpha;
        qs.coeff = hb2 / (2.0 * d.beta_tilde);
        const double label = kind == ModelKind::MetAff ? m : n;
        xs.shift = hb2 * label * label * d.inv_mu;
    }
    xs.ch_coeff = xs.coeff * sum2 / 16.0;
    return op;
}

FlatOperator symmetrize(const ChannelOperator1D& op) { return symmetrize(op.x_sector, op.h); }

double symmetry_defect(const Tridiagonal& K, std::uint64_t seed, int trials)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    const std::size_t n = K.size();
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> u(n), v(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = dist(rng);
            v[i] = dist(rng);
        }
        const auto Ku = K.apply(u), Kv = K.apply(v);
        double a = 0.0, b = 0.0, nu = 0.0, nv = 0.0, nku = 0.0, nkv = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            a += u[i] * Kv[i];
            b += Ku[i] * v[i];
            nu += u[i] * u[i];
            nv += v[i] * v[i];
            nku += Ku[i] * Ku[i];
            nkv += Kv[i] * Kv[i];
        }
        const double scale = std::sqrt(nu * nkv) + std::sqrt(nv * nku);
        worst = std::max(worst, scale > 0.0 ? std::abs(a - b) / scale : std::abs(a - b));
    }
    return worst;
}

} // namespace affrigid
