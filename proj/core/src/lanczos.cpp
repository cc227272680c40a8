#include "affrigid/lanczos.hpp"

#include "affrigid/errors.hpp"
#include "affrigid/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace affrigid {

namespace {

using cdouble = std::complex<double>;

struct RitzPair {
    double value;
    double residual;
    Eigen::VectorXcd vector;
};

struct Run {
    std::vector<RitzPair> converged;
    double lowest_residual_failure = 0.0;
    int steps = 0;
    bool ok = false;
};

/// Removes the M-components along the locked vectors (stored with their M-images).
void deflate(Eigen::VectorXcd& w, const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& MX)
{
    if (X.cols() == 0)
        return;
    w -= X * (MX.adjoint() * w);
}

Run lanczos_run(Eigen::Index n, const ComplexOp& K, const ComplexOp& M, const ComplexOp& Minv,
                const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& MX, int want,
                const LanczosOptions& opt, std::mt19937_64& rng)
{
    Run run;
    const int m_max = static_cast<int>(std::min<Eigen::Index>(opt.max_iterations, n - X.cols()));
    if (m_max < 1)
        return run;
    std::normal_distribution<double> dist;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cdouble(dist(rng), dist(rng));
    deflate(v, X, MX);
    Eigen::VectorXcd Mv = M(v);
    double nrm = std::sqrt(std::max(0.0, v.dot(Mv).real()));
    if (!(nrm > 0.0))
        throw NumericalError("Lanczos start vector vanished after deflation");
    v /= nrm;
    Mv /= nrm;

    Eigen::MatrixXcd V(n, m_max);
    std::vector<double> alpha, beta;
    double anorm = 0.0; // running estimate of ||T|| for the breakdown test
    V.col(0) = v;
    for (int j = 0; j < m_max; ++j) {
        const Eigen::VectorXcd Kv = K(V.col(j));
        Eigen::VectorXcd w = Minv(Kv);
        const double a = V.col(j).dot(Kv).real();
        alpha.push_back(a);
        w -= a * V.col(j);
        if (j > 0)
            w -= beta[j - 1] * V.col(j - 1);
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXcd Mw = M(w);
            w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * Mw);
            deflate(w, X, MX);
        }
        const Eigen::VectorXcd Mw = M(w);
        const double b = std::sqrt(std::max(0.0, w.dot(Mw).real()));
        run.steps = j + 1;
        anorm = std::max(anorm, std::abs(a) + b + (j > 0 ? beta[j - 1] : 0.0));

        // an (almost) invariant Krylov space makes its Ritz values exact
        const bool last = j + 1 == m_max || b <= 1e-11 * anorm;
        if ((j + 1) % opt.check_every == 0 || last) {
            const int m = j + 1;
            std::vector<double> off(beta.begin(), beta.begin() + (m - 1));
            const auto ev = tridiagonal_ql(alpha, off, false);
            const Tridiagonal T = Tridiagonal::symmetric(alpha, off);
            const Tridiagonal I = Tridiagonal::identity(m);
            const int k_need = std::min(want, m);
            std::vector<RitzPair> pairs;
            bool all = k_need == want;
            for (int k = 0; k < k_need; ++k) {
                const double theta = ev.values[k];
                const auto y = pencil_eigenvector(T, I, theta);
                const double res = b * std::abs(y.back());
                if (res > opt.tol * std::max(1.0, std::abs(theta))) {
                    all = false;
                    run.lowest_residual_failure = std::max(run.lowest_residual_failure, res);
                    break;
                }
                Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), m);
                pairs.push_back({theta, res, V.leftCols(m) * yv.cast<cdouble>()});
            }
            if (all || last) {
                run.converged = std::move(pairs);
                run.ok = all;
                return run;
            }
        }
        if (j + 1 < m_max) {
            beta.push_back(b);
            V.col(j + 1) = w / b;
        }
    }
    return run;
}

} // namespace

LanczosResult lanczos_lowest(Eigen::Index n, const ComplexOp& apply_K, const ComplexOp& apply_M,
                             const ComplexOp& solve_M, const LanczosOptions& opt)
{
    if (opt.count < 1 || opt.count > n)
        throw std::domain_error("Lanczos eigenvalue count outside [1, n]");
    std::mt19937_64 rng(opt.seed);
    Eigen::MatrixXcd X(n, 0), MX(n, 0);
    std::vector<RitzPair> locked;
    LanczosResult out;

    for (int r = 0; r < opt.max_runs; ++r) {
        Run run = lanczos_run(n, apply_K, apply_M, solve_M, X, MX, opt.count, opt, rng);
        out.iterations += run.steps;
        ++out.runs;
        if (!run.ok) {
            std::ostringstream msg;
            msg << "Lanczos did not converge: run " << r + 1 << ", Krylov dimension " << run.steps
                << ", " << run.converged.size() << " of " << opt.count
                << " Ritz pairs converged, worst residual " << run.lowest_residual_failure;
            throw NumericalError(msg.str());
        }
        const double bar = locked.size() >= static_cast<std::size_t>(opt.count)
            ? locked[opt.count - 1].value
            : std::numeric_limits<double>::infinity();
        const double found = run.converged.empty() ? std::numeric_limits<double>::infinity()
                                                   : run.converged.front().value;
        const bool done = found >= bar - opt.tol * std::max(1.0, std::abs(bar));

        for (auto& p : run.converged) {
            // keep the locked basis M-orthonormal so that deflation stays a projector
            Eigen::VectorXcd x = p.vector;
            for (int pass = 0; pass < 2; ++pass)
                deflate(x, X, MX);
            Eigen::VectorXcd Mx = apply_M(x);
            const double nx = std::sqrt(std::max(0.0, x.dot(Mx).real()));
            if (!(nx > 0.5))
                continue; // numerically a copy of an already locked vector
            const Eigen::Index c = X.cols();
            X.conservativeResize(n, c + 1);
            MX.conservativeResize(n, c + 1);
            X.col(c) = x / nx;
            MX.col(c) = Mx / nx;
            locked.push_back(std::move(p));
        }
        std::sort(locked.begin(), locked.end(),
                  [](const RitzPair& a, const RitzPair& b) { return a.value < b.value; });
        if (done)
            break;
        if (X.cols() + opt.count > n)
            break;
    }
    const int k = std::min<int>(opt.count, static_cast<int>(locked.size()));
    for (int i = 0; i < k; ++i) {
        out.values.push_back(locked[i].value);
        out.residuals.push_back(locked[i].residual);
    }
    return out;
}

} // namespace affrigid
