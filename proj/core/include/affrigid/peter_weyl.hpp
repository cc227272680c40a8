#pragma once

#include "affrigid/representations.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace affrigid {

/// Uniform axis with `count` nodes lo, ..., hi (count >= 2).
struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;

    double step() const { return (hi - lo) / (count - 1); }
    double node(int i) const { return lo + i * step(); }
    bool operator==(const GridAxis&) const = default;
};

/// Tensor grid over the deformation invariants (q^1, ..., q^n), last axis fastest.
class QGrid {
public:
    QGrid() = default;
    explicit QGrid(std::vector<GridAxis> axes);

    int dim() const { return static_cast<int>(axes_.size()); }
    std::size_t size() const { return size_; }
    const std::vector<GridAxis>& axes() const { return axes_; }

    Eigen::VectorXd point(std::size_t flat) const;
    std::vector<int> multi_index(std::size_t flat) const;
    std::size_t flat_index(const std::vector<int>& idx) const;
    /// Trapezoid weight of a node (product of per-axis weights).
    double trapezoid_weight(std::size_t flat) const;

    bool operator==(const QGrid& o) const { return axes_ == o.axes_; }

private:
    std::vector<GridAxis> axes_;
    std::size_t size_ = 0;
};

enum class TargetSpace { GLPlus, DoubleCover };

std::string to_string(TargetSpace t);
TargetSpace parse_target_space(const std::string& text);

/**
 * Reduced amplitude of one channel: an N(alpha) x N(beta) matrix per grid node.
 * (row, col) are the degeneracy indices selecting the component
 * [D^alpha(L) f(q) D^beta(R^-1)]_{row, col}; both are ladder-basis positions.
 */
struct ChannelAmplitude {
    RepLabel alpha;
    RepLabel beta;
    int row = 0;
    int col = 0;
    QGrid grid;
    std::vector<Eigen::MatrixXcd> values;

    /// Zero amplitude with correctly sized matrices.
    static ChannelAmplitude zeros(const RepLabel& alpha, const RepLabel& beta, const QGrid& grid,
                                  int row = 0, int col = 0);

    /// Throws std::domain_error when sizes disagree with the labels or grid.
    void validate() const;

    /// Multilinear interpolation; q outside the grid box is a domain error.
    Eigen::MatrixXcd interpolate(const Eigen::VectorXd& q) const;
};

struct Expansion {
    std::vector<ChannelAmplitude> channels;
    TargetSpace target = TargetSpace::GLPlus;
};

/// sum over channels of [D^alpha(L) f(q) D^beta(R^-1)]_{row, col}
cdouble evaluate(const Expansion& e, const RotationVector& L, const Eigen::VectorXd& q,
                 const RotationVector& R);

/// Planar Fourier form sum f^{mn}(q) e^{i m alpha} e^{i n beta} for SO(2) x SO(2) channels.
cdouble evaluate_planar(const Expansion& e, double alpha, const Eigen::VectorXd& q, double beta);

/**
 * sum over matching (alpha, beta, row, col) of 1/(N(alpha) N(beta)) * integral of
 * Tr(f1^+ f2) P_lambda dq, by the trapezoid rule on the shared grid.
 */
cdouble scalar_product(const Expansion& e1, const Expansion& e2);

struct SuperselectionViolation {
    std::size_t channel;
    RepLabel alpha;
    RepLabel beta;
    std::string reason;
};

struct SuperselectionReport {
    std::vector<SuperselectionViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Integer-only labels for GLPlus; equal halfness (s - j integer) for DoubleCover.
bool labels_admissible(const RepLabel& alpha, const RepLabel& beta, TargetSpace target,
                       std::string* reason = nullptr);

SuperselectionReport validate_superselection(const Expansion& e);

/// Throws std::domain_error unless W is a signed permutation matrix with det +1.
void require_signed_permutation(const Eigen::MatrixXd& W);

/// q -> pi_W(q) where Diag(exp pi_W q) = W Diag(exp q) W^T.
Eigen::VectorXd permute_invariants(const Eigen::MatrixXd& W, const Eigen::VectorXd& q);

/// Representation matrix of a planar rotation (n = 2) or a rotation in space (n = 3).
Eigen::MatrixXcd represent_matrix(const RepLabel& label, const Eigen::MatrixXd& W);

/// All signed permutation matrices of size n with det +1.
std::vector<Eigen::MatrixXd> signed_permutation_group(int n);

/**
 * max over nodes of || f(pi_W q) - D^alpha(W) f(q) D^beta(W)^{-1} ||_F.
 * For involutive W this equals the defect of f(pi_W q) = D^alpha(W) f(q) D^beta(W).
 */
double validate_w_symmetry(const ChannelAmplitude& f, const Eigen::MatrixXd& W);

/// Structured text, one record per grid node per channel; lossless round trip.
void export_amplitudes(std::ostream& os, const Expansion& e);
Expansion import_amplitudes(std::istream& is);

} // namespace affrigid
