#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace affrigid {

using ComplexOp = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

struct LanczosOptions {
    int count = 5;
    int max_iterations = 400; ///< Krylov dimension per run
    int max_runs = 6;         ///< deflated restarts used to catch degenerate copies
    double tol = 1e-9;        ///< residual / max(1, |theta|)
    std::uint64_t seed = 20240101;
    int check_every = 10;
};

struct LanczosResult {
    std::vector<double> values;    ///< ascending
    std::vector<double> residuals; ///< M^{-1}-norm residual estimates
    int iterations = 0;            ///< total operator applications
    int runs = 0;
};

/**
 * Lowest eigenvalues of the Hermitian pencil (K, M) with M positive definite: Lanczos on
 * M^{-1} K in the M-inner product with full reorthogonalisation. Converged pairs are
 * locked and the iteration is restarted in their M-orthogonal complement until a run
 * finds nothing below the current count-th value, which recovers multiplicities.
 * Throws NumericalError with residual diagnostics when a run fails to converge.
 */
LanczosResult lanczos_lowest(Eigen::Index n, const ComplexOp& apply_K, const ComplexOp& apply_M,
                             const ComplexOp& solve_M, const LanczosOptions& options);

} // namespace affrigid
