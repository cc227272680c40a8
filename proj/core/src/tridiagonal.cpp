#include "affrigid/tridiagonal.hpp"

#include "affrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace affrigid {

Tridiagonal Tridiagonal::symmetric(std::vector<double> d, std::vector<double> off)
{
    if (!d.empty() && off.size() + 1 != d.size())
        throw std::domain_error("off-diagonal band must have n-1 entries");
    Tridiagonal t;
    t.diag = std::move(d);
    t.sub = off;
    t.super = std::move(off);
    return t;
}

Tridiagonal Tridiagonal::identity(std::size_t n)
{
    return symmetric(std::vector<double>(n, 1.0), std::vector<double>(n ? n - 1 : 0, 0.0));
}

std::vector<double> Tridiagonal::apply(const std::vector<double>& v) const
{
    const std::size_t n = size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * v[i];
        if (i > 0)
            s += sub[i - 1] * v[i - 1];
        if (i + 1 < n)
            s += super[i] * v[i + 1];
        out[i] = s;
    }
    return out;
}

double Tridiagonal::asymmetry() const
{
    double scale = 0.0, defect = 0.0;
    for (double x : diag)
        scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < sub.size(); ++i) {
        scale = std::max({scale, std::abs(sub[i]), std::abs(super[i])});
        defect = std::max(defect, std::abs(sub[i] - super[i]));
    }
    return scale > 0.0 ? defect / scale : defect;
}

TridiagonalEigen tridiagonal_ql(std::vector<double> d, std::vector<double> e, bool want_vectors)
{
    const int n = static_cast<int>(d.size());
    TridiagonalEigen out;
    if (n == 0)
        return out;
    if (static_cast<int>(e.size()) != n - 1)
        throw std::domain_error("off-diagonal band must have n-1 entries");
    e.push_back(0.0);

    std::vector<double> z;
    if (want_vectors) {
        z.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            z[static_cast<std::size_t>(i) * n + i] = 1.0;
    }
    // z is stored column-major: z[col * n + row]
    const int max_sweeps = 60;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
                    break;
            }
            if (m != l) {
                if (iter++ == max_sweeps)
                    throw NumericalError("implicit QL: no convergence for eigenvalue "
                                         + std::to_string(l) + " after "
                                         + std::to_string(max_sweeps) + " sweeps");
                ++out.iterations;
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (want_vectors) {
                        double* zi = &z[static_cast<std::size_t>(i) * n];
                        double* zi1 = &z[static_cast<std::size_t>(i + 1) * n];
                        for (int k = 0; k < n; ++k) {
                            f = zi1[k];
                            zi1[k] = s * zi[k] + c * f;
                            zi[k] = c * zi[k] - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    out.values.resize(n);
    for (int k = 0; k < n; ++k)
        out.values[k] = d[order[k]];
    if (want_vectors) {
        out.vectors.resize(n);
        for (int k = 0; k < n; ++k)
            out.vectors[k].assign(z.begin() + static_cast<std::ptrdiff_t>(order[k]) * n,
                                  z.begin() + static_cast<std::ptrdiff_t>(order[k] + 1) * n);
    }
    return out;
}

namespace {

void require_pencil(const Tridiagonal& K, const Tridiagonal& M)
{
    if (K.size() != M.size() || K.size() == 0)
        throw std::domain_error("pencil matrices must be non-empty and of equal size");
}

} // namespace

int pencil_sturm_count(const Tridiagonal& K, const Tridiagonal& M, double lambda)
{
    require_pencil(K, M);
    // LDL^T of K - lambda M; Sylvester inertia counts negative pivots.
    const std::size_t n = K.size();
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double pivot = K.diag[0] - lambda * M.diag[0];
    for (std::size_t i = 0;; ++i) {
        if (pivot == 0.0)
            pivot = -tiny;
        if (pivot < 0.0)
            ++count;
        if (i + 1 == n)
            break;
        const double off = K.super[i] - lambda * M.super[i];
        pivot = K.diag[i + 1] - lambda * M.diag[i + 1] - off * off / pivot;
    }
    return count;
}

std::vector<double> pencil_lowest(const Tridiagonal& K, const Tridiagonal& M, int count,
                                  double tol)
{
    require_pencil(K, M);
    const int n = static_cast<int>(K.size());
    if (count < 1 || count > n)
        throw std::domain_error("requested eigenvalue count outside [1, n]");

    double scale = 1.0;
    for (std::size_t i = 0; i < K.size(); ++i)
        scale = std::max(scale, std::abs(K.diag[i]) / M.diag[i]);
    double lo = -scale, hi = scale;
    for (int guard = 0; pencil_sturm_count(K, M, lo) > 0; ++guard) {
        if (guard > 200)
            throw NumericalError("pencil bisection: no lower bound found");
        lo *= 2.0;
    }
    for (int guard = 0; pencil_sturm_count(K, M, hi) < count; ++guard) {
        if (guard > 200)
            throw NumericalError("pencil bisection: no upper bound found");
        hi = hi > 0.0 ? 2.0 * hi : 1.0;
    }

    std::vector<double> values(count);
    for (int k = 0; k < count; ++k) {
        // smallest lambda with sturm_count(lambda) > k
        double a = k == 0 ? lo : values[k - 1] - tol * std::max(1.0, std::abs(values[k - 1]));
        double b = hi;
        for (int it = 0; it < 400; ++it) {
            const double mid = 0.5 * (a + b);
            if (b - a <= tol * std::max(1.0, std::abs(mid)) || mid == a || mid == b)
                break;
            if (pencil_sturm_count(K, M, mid) > k)
                b = mid;
            else
                a = mid;
        }
        values[k] = 0.5 * (a + b);
    }
    return values;
}

namespace {

/// Gaussian elimination with partial pivoting for a general tridiagonal system.
std::vector<double> solve_shifted(const Tridiagonal& K, const Tridiagonal& M, double lambda,
                                  std::vector<double> b)
{
    const std::size_t n = K.size();
    std::vector<double> dl(n, 0.0), d(n), du(n, 0.0), du2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = K.diag[i] - lambda * M.diag[i];
        if (i + 1 < n) {
            du[i] = K.super[i] - lambda * M.super[i];
            dl[i] = K.sub[i] - lambda * M.sub[i];
        }
    }
    // an exact shift makes the system singular; pivots are floored at eps * |A - lambda M|
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        scale = std::max(scale, std::abs(d[i]) + std::abs(du[i]) + std::abs(dl[i]));
    const double tiny = std::max(scale, 1e-300) * std::numeric_limits<double>::epsilon();
    auto floor_pivot = [tiny](double& p) {
        if (std::abs(p) < tiny)
            p = p < 0.0 ? -tiny : tiny;
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            floor_pivot(d[i]);
            const double f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            b[i + 1] -= f * b[i];
        } else {
            // swap rows i and i+1
            const double f = d[i] / dl[i];
            d[i] = dl[i];
            const double t = d[i + 1];
            d[i + 1] = du[i] - f * t;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du2[i];
            }
            du[i] = t;
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= f * b[i];
        }
    }
    floor_pivot(d[n - 1]);
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        if (k + 1 < n)
            s -= du[k] * x[k + 1];
        if (k + 2 < n)
            s -= du2[k] * x[k + 2];
        x[k] = s / d[k];
    }
    return x;
}

double m_norm(const Tridiagonal& M, const std::vector<double>& v)
{
    const auto Mv = M.apply(v);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += v[i] * Mv[i];
    return std::sqrt(std::max(s, 0.0));
}

} // namespace

std::vector<double> pencil_eigenvector(const Tridiagonal& K, const Tridiagonal& M, double lambda)
{
    require_pencil(K, M);
    const std::size_t n = K.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) // deterministic start with no special symmetry
        x[i] = 1.0 + 0.1 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    for (int it = 0; it < 4; ++it) {
        x = solve_shifted(K, M, lambda, M.apply(x));
        const double nrm = m_norm(M, x);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw NumericalError("inverse iteration broke down");
        for (double& v : x)
            v /= nrm;
    }
    double vmax = 0.0;
    for (double v : x)
        vmax = std::max(vmax, std::abs(v));
    for (double v : x)
        if (std::abs(v) > 1e-6 * vmax) {
            if (v < 0.0)
                for (double& w : x)
                    w = -w;
            break;
        }
    return x;
}

int count_sign_changes(const std::vector<double>& v, double rel_floor)
{
    double vmax = 0.0;
    for (double x : v)
        vmax = std::max(vmax, std::abs(x));
    const double floor = rel_floor * vmax;
    int changes = 0;
    int last = 0;
    for (double x : v) {
        if (std::abs(x) <= floor)
            continue;
        const int s = x > 0.0 ? 1 : -1;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace affrigid
