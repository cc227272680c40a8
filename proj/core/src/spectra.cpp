#include "affrigid/spectra.hpp"

#include "affrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace affrigid {

std::string to_string(Form f) { return f == Form::Weighted ? "weighted" : "symmetrized"; }

bool SpectrumResult::is_bound(std::size_t k) const
{
    const double err = k < error_estimates.size() ? error_estimates[k] : 0.0;
    return eigenvalues[k] < threshold - 3.0 * err;
}

bool SpectrumResult::sturm_ok() const
{
    for (std::size_t k = 0; k < node_counts.size(); ++k)
        if (node_counts[k] != static_cast<int>(k))
            return false;
    return true;
}

std::vector<double> sector_eigenvalues(const Sector1D& s, double h, int count, Form form)
{
    if (count < 1)
        throw std::domain_error("eigenvalue count must be at least 1");
    if (form == Form::Weighted) {
        const WeightedPencil p = discretize_weighted(s, h);
        if (static_cast<std::size_t>(count) > p.K.size())
            throw std::domain_error("more eigenvalues requested than grid unknowns");
        return pencil_lowest(p.K, p.M, count);
    }
    const FlatOperator op = symmetrize(s, h);
    if (static_cast<std::size_t>(count) > op.nodes.size())
        throw std::domain_error("more eigenvalues requested than grid unknowns");
    const Tridiagonal T = op.matrix();
    auto ev = tridiagonal_ql(T.diag, T.super, false);
    ev.values.resize(count);
    return ev.values;
}

SpectrumResult solve_sector(const Sector1D& s, double h, int count, Form form)
{
    s.validate();
    const int N = element_count(s.lo, s.hi, h);
    const double h_eff = (s.hi - s.lo) / N;
    const int Nc = (N + 1) / 2;
    const double hc_eff = (s.hi - s.lo) / Nc;

    SpectrumResult r;
    r.form = form;
    r.X = s.hi;
    r.h = h_eff;
    r.threshold = s.threshold();
    r.eigenvalues = sector_eigenvalues(s, h_eff, count, form);

    if (form == Form::Weighted) {
        const WeightedPencil p = discretize_weighted(s, h_eff);
        for (double e : r.eigenvalues)
            r.node_counts.push_back(count_sign_changes(p.nodal_values(pencil_eigenvector(p.K, p.M, e))));
    } else {
        const FlatOperator op = symmetrize(s, h_eff);
        const Tridiagonal T = op.matrix();
        const Tridiagonal I = Tridiagonal::identity(T.size());
        for (double e : r.eigenvalues)
            r.node_counts.push_back(count_sign_changes(pencil_eigenvector(T, I, e)));
    }

    const auto coarse = sector_eigenvalues(s, hc_eff, count, form);
    const double ratio = hc_eff / h_eff;
    for (int k = 0; k < count; ++k)
        r.error_estimates.push_back(std::abs(r.eigenvalues[k] - coarse[k]) / (ratio * ratio - 1.0));
    r.margin = 3.0 * r.error_estimates.front();
    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
        if (r.is_bound(k))
            ++r.bound_count;
    return r;
}

SpectrumResult solve_1d(const ChannelOperator1D& op, int count, Form form)
{
    SpectrumResult r = solve_sector(op.x_sector, op.h, count, form);
    r.model = to_string(op.kind);
    r.label1 = op.m;
    r.label2 = op.n;
    r.sector = op.kind == ModelKind::DAlembert ? "y" : "x";
    return r;
}

std::string to_string(ChannelClass c)
{
    switch (c) {
    case ChannelClass::DiscreteCapable: return "DiscreteCapable";
    case ChannelClass::ContinuousOnly: return "ContinuousOnly";
    case ChannelClass::Marginal: return "Marginal";
    }
    return "?";
}

ChannelClass classify_channel(int m, int n)
{
    const int d = std::abs(n - m), s = std::abs(n + m);
    if (d < s)
        return ChannelClass::DiscreteCapable;
    if (d > s)
        return ChannelClass::ContinuousOnly;
    return ChannelClass::Marginal;
}

std::vector<BoundednessRow> boundedness_scan(ModelKind kind, const ModelParams& params,
                                             const std::vector<std::pair<int, int>>& channels,
                                             int count, const GridSpec1D& grid,
                                             const PotentialSpec& v_sh)
{
    if (channels.empty())
        throw std::domain_error("boundedness scan needs at least one channel");
    std::vector<BoundednessRow> rows;
    for (const auto& [m, n] : channels) {
        BoundednessRow row;
        row.m = m;
        row.n = n;
        try {
            const auto op = assemble_2d_channel(kind, params, m, n, grid, {}, v_sh);
            row.ground = sector_eigenvalues(op.x_sector, op.h, count, Form::Weighted).front();
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

SpectrumResult solve_nd(const NdChannelOperator& op, int count, const LanczosOptions& options)
{
    if (count < 1 || count > 10)
        throw std::domain_error("n = 3 solves provide between 1 and 10 eigenvalues");
    LanczosOptions opt = options;
    opt.count = count;
    const auto res = lanczos_lowest(
        op.dofs(), [&](const Eigen::VectorXcd& v) { return op.apply(v); },
        [&](const Eigen::VectorXcd& v) { return op.apply_mass(v); },
        [&](const Eigen::VectorXcd& v) { return op.solve_mass(v); }, opt);

    SpectrumResult r;
    r.model = to_string(op.kind);
    r.label1 = op.alpha.spin();
    r.label2 = op.beta.spin();
    r.sector = "q";
    r.eigenvalues = res.values;
    r.error_estimates = res.residuals;
    r.threshold = std::numeric_limits<double>::quiet_NaN();
    r.X = op.grid.hi[1] - op.grid.lo[1];
    r.h = std::max({op.spacing(0), op.spacing(1), op.spacing(2)});
    r.refined = false;
    return r;
}

double observed_order(double e_h, double e_h2, double e_h4)
{
    const double a = e_h - e_h2, b = e_h2 - e_h4;
    if (a == 0.0 || b == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return std::log2(std::abs(a / b));
}

double richardson2(double e_h, double e_h2) { return (4.0 * e_h2 - e_h) / 3.0; }

bool ConvergenceStudy::accepted(double lo, double hi) const
{
    if (observed_order.empty())
        return false;
    for (double p : observed_order)
        if (!(p >= lo && p <= hi))
            return false;
    return true;
}

ConvergenceStudy convergence_study(const std::function<std::vector<double>(int)>& solver,
                                   double h0, int levels)
{
    if (levels < 3)
        throw std::domain_error("a convergence study needs at least three levels");
    ConvergenceStudy c;
    for (int l = 0; l < levels; ++l) {
        c.h.push_back(h0 / std::ldexp(1.0, l));
        c.values.push_back(solver(l));
    }
    const std::size_t K = c.values.back().size();
    for (std::size_t k = 0; k < K; ++k) {
        const double a = c.values[levels - 3][k], b = c.values[levels - 2][k],
                     d = c.values[levels - 1][k];
        c.observed_order.push_back(observed_order(a, b, d));
        c.extrapolated.push_back(richardson2(b, d));
    }
    return c;
}

ConvergenceStudy convergence_study(const Sector1D& s, double h0, int levels, int count, Form form)
{
    return convergence_study(
        [&](int l) { return sector_eigenvalues(s, h0 / std::ldexp(1.0, l), count, form); }, h0,
        levels);
}

} // namespace affrigid
