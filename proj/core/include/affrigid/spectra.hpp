#pragma once

#include "affrigid/channel2d.hpp"
#include "affrigid/lanczos.hpp"
#include "affrigid/nd_operator.hpp"
#include "affrigid/sector.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace affrigid {

/// Which realisation of a radial sector is diagonalised.
enum class Form { Weighted, Symmetrized };

std::string to_string(Form f);

struct SpectrumResult {
    std::string model;
    double label1 = 0.0; ///< m (planar) or s
    double label2 = 0.0; ///< n (planar) or j
    std::string sector = "x";
    Form form = Form::Weighted;

    std::vector<double> eigenvalues;     ///< ascending
    std::vector<double> error_estimates; ///< per eigenvalue, from a coarser companion grid
    std::vector<int> node_counts;        ///< interior sign changes (1D only)
    double threshold = 0.0;
    double margin = 0.0; ///< resolution margin of the lowest eigenvalue
    int bound_count = 0;
    double X = 0.0;
    double h = 0.0;
    int refinement_level = 0;
    bool refined = false; ///< n = 3: coarse-grid variational estimate flag

    /// E_k < threshold - 3 * error_estimate_k
    bool is_bound(std::size_t k) const;
    /// node_counts == (0, 1, 2, ...)
    bool sturm_ok() const;
};

/**
 * Lowest `count` eigenvalues of one sector. The weighted form is solved by Sturm
 * bisection on the Galerkin pencil, the symmetrized form by implicit QL. Eigenvectors
 * come from inverse iteration. A second solve on a grid twice as coarse provides the
 * per-eigenvalue error estimate used for the bound/continuum decision.
 */
SpectrumResult solve_sector(const Sector1D& s, double h, int count, Form form = Form::Weighted);

/// x-sector of a planar channel.
SpectrumResult solve_1d(const ChannelOperator1D& op, int count, Form form = Form::Weighted);

/// Eigenvalues only (no error estimate, no vectors) on a given grid.
std::vector<double> sector_eigenvalues(const Sector1D& s, double h, int count, Form form);

enum class ChannelClass { DiscreteCapable, ContinuousOnly, Marginal };

std::string to_string(ChannelClass c);

/// |n - m| < |n + m| : DiscreteCapable; > : ContinuousOnly; = : Marginal.
ChannelClass classify_channel(int m, int n);

struct BoundednessRow {
    int m = 0;
    int n = 0;
    double ground = 0.0;
    bool ok = false;
    std::string error;
};

/// Ground energy of the x-sector for every channel; solver failures stay per-row.
std::vector<BoundednessRow> boundedness_scan(ModelKind kind, const ModelParams& params,
                                             const std::vector<std::pair<int, int>>& channels,
                                             int count, const GridSpec1D& grid = {},
                                             const PotentialSpec& v_sh = {});

/// Lowest eigenvalues of an n = 3 channel by Lanczos on the Galerkin pencil.
SpectrumResult solve_nd(const NdChannelOperator& op, int count, const LanczosOptions& options = {});

struct ConvergenceStudy {
    std::vector<double> h;                        ///< one per level, halving
    std::vector<std::vector<double>> values;      ///< values[level][k]
    std::vector<double> observed_order;           ///< per eigenvalue, from the last three levels
    std::vector<double> extrapolated;             ///< Richardson with the observed-order-2 model

    bool accepted(double lo = 1.7, double hi = 2.3) const;
};

/// log2((E_h - E_{h/2}) / (E_{h/2} - E_{h/4}))
double observed_order(double e_h, double e_h2, double e_h4);

/// (4 E_{h/2} - E_h) / 3
double richardson2(double e_h, double e_h2);

/// Sector solved at h0, h0/2, ..., levels >= 3.
ConvergenceStudy convergence_study(const Sector1D& s, double h0, int levels, int count,
                                   Form form = Form::Weighted);

/// Generic driver: solver(level) returns the lowest eigenvalues at spacing h0 / 2^level.
ConvergenceStudy convergence_study(const std::function<std::vector<double>(int)>& solver,
                                   double h0, int levels);

} // namespace affrigid
