#pragma once

#include "affrigid/model.hpp"
#include "affrigid/potential.hpp"
#include "affrigid/sector.hpp"

#include <cstdint>
#include <vector>

namespace affrigid {

/// Radial grid (0, X] with spacing h, and the dilatation interval [q_lo, q_hi] with q_h.
struct GridSpec1D {
    double X = 40.0;
    double h = 0.04;
    double q_lo = -10.0;
    double q_hi = 10.0;
    double q_h = 0.04;
};

/**
 * Reduced Hamiltonian of the planar channel (m, n): a separable pair of sectors.
 * For the affine models the x-sector is the shear coordinate with weight |sh x| and
 * the q-sector the dilatation. For d'Alembert they are y = Q1 - Q2 and z = Q1 + Q2,
 * both with linear weight.
 */
struct ChannelOperator1D {
    ModelKind kind = ModelKind::AffAff;
    ModelParams params;
    int m = 0;
    int n = 0;
    Sector1D x_sector;
    Sector1D q_sector;
    double h = 0.04;
    double q_h = 0.04;

    double X() const { return x_sector.hi; }
    double kinetic_coeff() const { return x_sector.coeff; }
    double threshold() const { return x_sector.threshold(); }

    /// Interior x-nodes i*h, i = 1..N-1, with the spacing actually used.
    std::vector<double> grid() const;
    /// P(x_i) on grid().
    std::vector<double> weight() const;
    /// Full x-sector potential (barrier, hyperbolic term, shift, V_sh) on grid().
    std::vector<double> diag_potential() const;
};

ChannelOperator1D assemble_2d_channel(ModelKind kind, const ModelParams& params, int m, int n,
                                      const GridSpec1D& grid, const PotentialSpec& v_dil,
                                      const PotentialSpec& v_sh);

/// Square-root-weight transform of the x-sector.
FlatOperator symmetrize(const ChannelOperator1D& op);

/**
 * Relative defect |<u, A v> - <A u, v>| of the discrete operator in its own inner
 * product (the Galerkin mass for the weighted form), on seeded random vectors.
 */
double symmetry_defect(const Tridiagonal& K, std::uint64_t seed, int trials = 8);

} // namespace affrigid
