#pragma once

#include "affrigid/potential.hpp"
#include "affrigid/tridiagonal.hpp"

#include <string>
#include <vector>

namespace affrigid {

/// Weight family of a radial sector: P(x) = 1, sh x, or x.
enum class Profile { Flat, Sinh, Linear };

std::string to_string(Profile p);

/**
 * One separable sector  -c (1/P)(P u')' + U(x) u  on [lo, hi].
 *
 * U = barrier + smooth part, with barrier c nu^2 / (4 sh^2(x/2)) for Sinh and
 * c nu^2 / x^2 for Linear. The smooth part is  -ch_coeff / ch^2(x/2) + shift + V(x).
 * Sinh/Linear sectors start at the coordinate singularity lo = 0; Flat sectors
 * carry Dirichlet conditions at both ends.
 */
struct Sector1D {
    Profile profile = Profile::Flat;
    double coeff = 1.0;
    double nu = 0.0;
    double ch_coeff = 0.0;
    double shift = 0.0;
    PotentialSpec potential;
    double lo = 0.0;
    double hi = 40.0;

    double weight(double x) const;
    double barrier(double x) const;
    double potential_at(double x) const;
    /// Bottom of the continuous spectrum on the half-line (+inf for confining V).
    double threshold() const;
    void validate() const;

    /// Coefficient of 1/sh^2(x/2) (Sinh) or 1/x^2 (Linear) in energy units.
    double barrier_coeff() const;
};

/**
 * Galerkin P1 discretization of the weighted form after factoring the barrier,
 * u = rho(x) g(x) with rho = sh(x/2)^nu (Sinh) or x^nu (Linear). The generalized
 * problem K v = E M v lives in a diagonally rescaled nodal basis.
 */
struct WeightedPencil {
    std::vector<double> nodes;     ///< free nodes
    std::vector<double> log_scale; ///< g(x_i) = exp(-log_scale_i / 2) v_i
    std::vector<double> log_rho;   ///< log of the barrier factor at the nodes
    Tridiagonal K;
    Tridiagonal M;
    double h = 0.0;

    /// Nodal values u(x_i) = rho(x_i) g(x_i) of a pencil eigenvector.
    std::vector<double> nodal_values(const std::vector<double>& v) const;
};

/// The spacing actually used is (hi - lo) / element_count(lo, hi, h).
WeightedPencil discretize_weighted(const Sector1D& s, double h);

/// Flat-measure operator -c phi'' + U_i phi on interior nodes with Dirichlet ends.
struct FlatOperator {
    std::vector<double> nodes;
    std::vector<double> potential;
    double coeff = 1.0;
    double h = 0.0;

    Tridiagonal matrix() const;
};

/**
 * Square-root-weight similarity transform phi = sqrt(P) u of the sector, discretised
 * on the interior nodes. The effective potential is built from the sampled
 * transform function so that the discrete transform is exact on the grid.
 */
FlatOperator symmetrize(const Sector1D& s, double h);

/// Closed-form U_eff = c (w' + w^2), w = P'/(2P); for P = sh x this is c(1/4 - 1/(4 sh^2 x)).
double effective_potential(Profile p, double coeff, double x);

/// Smallest element count whose spacing does not exceed h.
int element_count(double lo, double hi, double h);

} // namespace affrigid
