#pragma once

#include "affrigid/model.hpp"
#include "affrigid/potential.hpp"
#include "affrigid/representations.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

namespace affrigid {

/**
 * Coordinates of the n = 3 box. Cartesian uses the invariants directly (q^a, or Q^a
 * for d'Alembert). Shear uses (s, x, y) with s the mean, x = q1 - q2, y = q2 - q3.
 */
enum class NdFrame { Cartesian, Shear };

/// Flat weight is a check configuration (separable particle-in-a-box).
enum class NdWeight { Physical, Flat };

std::string to_string(NdFrame f);
NdFrame parse_nd_frame(const std::string& text);

struct NdGridSpec {
    NdFrame frame = NdFrame::Shear;
    std::array<double, 3> lo{-1.0, 0.0, 0.0};
    std::array<double, 3> hi{1.0, 4.0, 4.0};
    std::array<int, 3> count{10, 10, 10}; ///< interior nodes per axis
    NdWeight weight = NdWeight::Physical;
};

struct NdLimits {
    std::size_t max_dofs = 600000;
    int max_twice_spin = 8;
    std::size_t max_bytes = std::size_t(1) << 30;
};

/**
 * Matrix-valued reduced operator on amplitudes f(q) in C^{(2s+1) x (2j+1)}, discretised
 * by trilinear finite elements with Dirichlet faces. Unknowns are stored component-major:
 * entry (r, c) of f at node i sits at i + nodes * (r + (2s+1) c).
 *
 * The action is K = K_0 (x) 1 + sum_k V_k (x) O_k, where K_0 holds the kinetic form and
 * scalar potentials, V_k are the weighted pair-function mass matrices and O_k the
 * squared left/right generator combinations. Nothing of size dofs x dofs is formed.
 */
class NdChannelOperator {
public:
    using SparseC = Eigen::SparseMatrix<cdouble>;
    using SparseR = Eigen::SparseMatrix<double>;

    ModelKind kind = ModelKind::AffAff;
    ModelParams params;
    RepLabel alpha;
    RepLabel beta;
    NdGridSpec grid;

    int nodes() const { return nodes_; }
    int components() const { return alpha.dimension() * beta.dimension(); }
    Eigen::Index dofs() const { return static_cast<Eigen::Index>(nodes_) * components(); }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const;
    Eigen::VectorXcd apply_mass(const Eigen::VectorXcd& f) const;
    Eigen::VectorXcd solve_mass(const Eigen::VectorXcd& f) const;
    /// f^H M g
    cdouble inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const;

    /// Kinetic tensor G in invariant coordinates: the operator is -div(G grad) + ...
    const Eigen::Matrix3d& metric() const { return metric_; }
    double casimir_shift() const { return casimir_shift_; }
    double pair_coeff() const { return pair_coeff_; }
    /// Generator combinations acting on vec(f), index = pair * 2 + (0: R - L, 1: R + L).
    const std::array<Eigen::MatrixXcd, 6>& pair_operators() const { return pair_ops_; }

    /// Point in invariant coordinates of interior node i.
    Eigen::Vector3d node_point(int i) const;
    double spacing(int axis) const { return h_[axis]; }

    const SparseR& mass_matrix() const { return mass_; }
    const SparseC& scalar_matrix() const { return k0_; }
    const SparseC& pair_matrix(int k) const { return pair_[k]; }

private:
    friend NdChannelOperator assemble_nd_channel(ModelKind, const ModelParams&, const RepLabel&,
                                                 const RepLabel&, const NdGridSpec&,
                                                 const PotentialSpec&, const NdLimits&);
    int nodes_ = 0;
    std::array<double, 3> h_{};
    Eigen::Matrix3d frame_ = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d metric_ = Eigen::Matrix3d::Identity();
    double casimir_shift_ = 0.0;
    double pair_coeff_ = 0.0;
    SparseR mass_;
    SparseC mass_c_;
    SparseC k0_;
    std::array<SparseC, 6> pair_;
    std::array<Eigen::MatrixXcd, 6> pair_ops_;
    std::array<bool, 6> pair_active_{};
    std::shared_ptr<Eigen::SimplicialLDLT<SparseR>> mass_solver_;
};

/**
 * Assembles the n = 3 channel (alpha, beta). Throws CapacityError when labels or the
 * grid exceed the limits, std::domain_error for gate violations or a box that leaves
 * the admissible region (d'Alembert needs Q^a > 0).
 */
NdChannelOperator assemble_nd_channel(ModelKind kind, const ModelParams& params,
                                      const RepLabel& alpha, const RepLabel& beta,
                                      const NdGridSpec& grid, const PotentialSpec& v_dil = {},
                                      const NdLimits& limits = {});

/// Relative Hermiticity defect in the Galerkin inner product on seeded random amplitudes.
double symmetry_defect(const NdChannelOperator& op, std::uint64_t seed, int trials = 4);

} // namespace affrigid
