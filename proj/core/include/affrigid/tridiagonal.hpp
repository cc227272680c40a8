#pragma once

#include <cstddef>
#include <vector>

namespace affrigid {

/// Real tridiagonal matrix stored by bands; sub[i] = A(i+1, i), super[i] = A(i, i+1).
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> sub;
    std::vector<double> super;

    std::size_t size() const { return diag.size(); }
    static Tridiagonal symmetric(std::vector<double> d, std::vector<double> off);
    static Tridiagonal identity(std::size_t n);

    std::vector<double> apply(const std::vector<double>& v) const;
    /// max_i |sub[i] - super[i]| relative to the largest band entry.
    double asymmetry() const;
};

struct TridiagonalEigen {
    std::vector<double> values;               ///< ascending
    std::vector<std::vector<double>> vectors; ///< vectors[k] belongs to values[k]; empty if not requested
    int iterations = 0;
};

/**
 * Implicit-shift QL for a symmetric tridiagonal matrix (d, e) with e[i] = A(i, i+1).
 * O(n^2) for eigenvalues only, O(n^3) with vectors. Throws NumericalError on stagnation.
 */
TridiagonalEigen tridiagonal_ql(std::vector<double> d, std::vector<double> e,
                                bool want_vectors = false);

/// Number of eigenvalues of the symmetric pencil (K, M) strictly below lambda; M must be SPD.
int pencil_sturm_count(const Tridiagonal& K, const Tridiagonal& M, double lambda);

/// Lowest `count` eigenvalues of the pencil by Sturm bisection to absolute/relative tol.
std::vector<double> pencil_lowest(const Tridiagonal& K, const Tridiagonal& M, int count,
                                  double tol = 1e-13);

/// Eigenvector of (K, M) for a converged eigenvalue by inverse iteration, M-normalised.
std::vector<double> pencil_eigenvector(const Tridiagonal& K, const Tridiagonal& M, double lambda);

/// Sign changes of a sampled eigenfunction, ignoring entries below rel_floor * max|v|.
int count_sign_changes(const std::vector<double>& v, double rel_floor = 1e-9);

} // namespace affrigid
