#include "affrigid/sector.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace affrigid {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 5-point Gauss-Legendre on [0, 1]
constexpr std::array<double, 5> kGaussX = {0.046910077030668, 0.230765344947158, 0.5,
                                           0.769234655052842, 0.953089922969332};
constexpr std::array<double, 5> kGaussW = {0.118463442528095, 0.239314335249683,
                                           0.284444444444444, 0.239314335249683,
                                           0.118463442528095};

double log_sinh(double x)
{
    if (x <= 0.0)
        return kNegInf;
    if (x > 20.0)
        return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
    return std::log(std::sinh(x));
}

/// log of the barrier factor rho: sh(x/2)^nu or x^nu.
double log_rho(const Sector1D& s, double x)
{
    if (s.nu == 0.0)
        return 0.0;
    switch (s.profile) {
    case Profile::Sinh: return s.nu * log_sinh(0.5 * (x - s.lo));
    case Profile::Linear: return x - s.lo > 0.0 ? s.nu * std::log(x - s.lo) : kNegInf;
    case Profile::Flat: return 0.0;
    }
    return 0.0;
}

/// log of the transformed weight P rho^2.
double log_weight(const Sector1D& s, double x)
{
    const double y = x - s.lo;
    switch (s.profile) {
    case Profile::Flat: return 0.0;
    case Profile::Sinh: return log_sinh(y) + 2.0 * log_rho(s, x);
    case Profile::Linear: return y > 0.0 ? std::log(y) + 2.0 * log_rho(s, x) : kNegInf;
    }
    return 0.0;
}

/// Regular potential left after the barrier has been absorbed into rho.
double residual_potential(const Sector1D& s, double x)
{
    double v = s.shift + s.potential(x);
    if (s.profile == Profile::Sinh) {
        const double ch = std::cosh(0.5 * (x - s.lo));
        v -= s.ch_coeff / (ch * ch);
        v -= s.coeff * s.nu * (s.nu + 2.0) / 4.0;
    }
    return v;
}

bool singular_left(const Sector1D& s) { return s.profile != Profile::Flat; }

} // namespace

std::string to_string(Profile p)
{
    switch (p) {
    case Profile::Flat: return "flat";
    case Profile::Sinh: return "sinh";
    case Profile::Linear: return "linear";
    }
    return "?";
}

void Sector1D::validate() const
{
    if (!(coeff > 0.0))
        throw std::domain_error("sector kinetic coefficient must be positive");
    if (!(hi > lo))
        throw std::domain_error("sector interval must satisfy hi > lo");
    if (!(nu >= 0.0))
        throw std::domain_error("barrier index must be non-negative");
    if (profile == Profile::Flat && nu != 0.0)
        throw std::domain_error("a flat sector carries no centrifugal barrier");
    if (profile != Profile::Sinh && ch_coeff != 0.0)
        throw std::domain_error("the 1/ch^2 term belongs to sinh sectors only");
}

double Sector1D::weight(double x) const
{
    switch (profile) {
    case Profile::Flat: return 1.0;
    case Profile::Sinh: return std::abs(std::sinh(x - lo));
    case Profile::Linear: return std::abs(x - lo);
    }
    return 1.0;
}

double Sector1D::barrier_coeff() const
{
    switch (profile) {
    case Profile::Sinh: return coeff * nu * nu / 4.0;
    case Profile::Linear: return coeff * nu * nu;
    case Profile::Flat: return 0.0;
    }
    return 0.0;
}

double Sector1D::barrier(double x) const
{
    const double y = x - lo;
    switch (profile) {
    case Profile::Sinh: {
        const double sh = std::sinh(0.5 * y);
        return barrier_coeff() / (sh * sh);
    }
    case Profile::Linear: return barrier_coeff() / (y * y);
    case Profile::Flat: return 0.0;
    }
    return 0.0;
}

double Sector1D::potential_at(double x) const
{
    double v = barrier(x) + shift + potential(x);
    if (profile == Profile::Sinh) {
        const double ch = std::cosh(0.5 * (x - lo));
        v -= ch_coeff / (ch * ch);
    }
    return v;
}

double Sector1D::threshold() const
{
    const double base = shift + potential.at_infinity();
    return profile == Profile::Sinh ? base + coeff / 4.0 : base;
}

int element_count(double lo, double hi, double h)
{
    if (!(h > 0.0) || !(hi > lo))
        throw std::domain_error("grid needs h > 0 and hi > lo");
    const double ratio = (hi - lo) / h;
    if (ratio > 5e7)
        throw std::domain_error("grid spacing too small for the interval");
    return std::max(2, static_cast<int>(std::ceil(ratio - 1e-9)));
}

std::vector<double> WeightedPencil::nodal_values(const std::vector<double>& v) const
{
    std::vector<double> u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        u[i] = v[i] * std::exp(log_rho[i] - 0.5 * log_scale[i]);
    return u;
}

WeightedPencil discretize_weighted(const Sector1D& s, double h_req)
{
    s.validate();
    const int N = element_count(s.lo, s.hi, h_req);
    const double h = (s.hi - s.lo) / N;
    const int first = singular_left(s) ? 0 : 1; // a vanishing weight makes x = lo natural
    const int last = N - 1;                     // Dirichlet at hi
    const int n = last - first + 1;

    WeightedPencil p;
    p.h = h;
    p.nodes.resize(n);
    p.log_scale.resize(n);
    p.log_rho.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = s.lo + (first + i) * h;
        p.nodes[i] = x;
        const double xref = (first + i == 0 && singular_left(s)) ? s.lo + 0.5 * h : x;
        p.log_scale[i] = log_weight(s, xref);
        p.log_rho[i] = log_rho(s, x);
    }
    p.K.diag.assign(n, 0.0);
    p.K.sub.assign(n - 1, 0.0);
    p.K.super.assign(n - 1, 0.0);
    p.M = p.K;

    for (int e = 0; e < N; ++e) {
        const double xa = s.lo + e * h;
        const int ga = e - first, gb = e + 1 - first; // free indices of the element's nodes
        const bool has_a = ga >= 0 && ga < n;
        const bool has_b = gb >= 0 && gb < n;
        if (!has_a && !has_b)
            continue;
        const double ra = has_a ? p.log_scale[ga] : 0.0;
        const double rb = has_b ? p.log_scale[gb] : 0.0;

        double kaa = 0, kbb = 0, kab = 0, kba = 0, maa = 0, mbb = 0, mab = 0, mba = 0;
        for (std::size_t g = 0; g < kGaussX.size(); ++g) {
            const double t = kGaussX[g];
            const double x = xa + t * h;
            const double lw = log_weight(s, x);
            const double vr = residual_potential(s, x);
            const double wq = kGaussW[g] * h;
            const double pa = 1.0 - t, pb = t;
            const double da = -1.0 / h, db = 1.0 / h;
            const double waa = wq * std::exp(lw - ra);
            const double wbb = wq * std::exp(lw - rb);
            const double wab = wq * std::exp(lw - 0.5 * (ra + rb));
            kaa += waa * (s.coeff * da * da + vr * pa * pa);
            kbb += wbb * (s.coeff * db * db + vr * pb * pb);
            kab += wab * (s.coeff * da * db + vr * pa * pb);
            kba += wab * (s.coeff * db * da + vr * pb * pa);
            maa += waa * pa * pa;
            mbb += wbb * pb * pb;
            mab += wab * pa * pb;
            mba += wab * pb * pa;
        }
        if (has_a) {
            p.K.diag[ga] += kaa;
            p.M.diag[ga] += maa;
        }
        if (has_b) {
            p.K.diag[gb] += kbb;
            p.M.diag[gb] += mbb;
        }
        if (has_a && has_b) {
            p.K.super[ga] += kab;
            p.K.sub[ga] += kba;
            p.M.super[ga] += mab;
            p.M.sub[ga] += mba;
        }
    }
    return p;
}

Tridiagonal FlatOperator::matrix() const
{
    const std::size_t n = nodes.size();
    std::vector<double> d(n), e(n ? n - 1 : 0, -coeff / (h * h));
    for (std::size_t i = 0; i < n; ++i)
        d[i] = 2.0 * coeff / (h * h) + potential[i];
    return Tridiagonal::symmetric(std::move(d), std::move(e));
}

FlatOperator symmetrize(const Sector1D& s, double h_req)
{
    s.validate();
    const int N = element_count(s.lo, s.hi, h_req);
    const double h = (s.hi - s.lo) / N;
    FlatOperator op;
    op.coeff = s.coeff;
    op.h = h;
    // sigma = sqrt(P) rho; sampled at all grid points including both ends
    std::vector<double> ls(N + 1);
    for (int i = 0; i <= N; ++i)
        ls[i] = 0.5 * log_weight(s, s.lo + i * h);
    for (int i = 1; i < N; ++i) {
        const double x = s.lo + i * h;
        const double ratio = std::exp(ls[i + 1] - ls[i]) + std::exp(ls[i - 1] - ls[i]) - 2.0;
        op.nodes.push_back(x);
        op.potential.push_back(s.coeff * ratio / (h * h) + residual_potential(s, x));
    }
    return op;
}

double effective_potential(Profile p, double coeff, double x)
{
    switch (p) {
    case Profile::Flat: return 0.0;
    case Profile::Sinh: {
        const double sh = std::sinh(x);
        return coeff * (0.25 - 0.25 / (sh * sh));
    }
    case Profile::Linear: return -coeff / (4.0 * x * x);
    }
    return 0.0;
}

} // namespace affrigid
