#pragma once

#include <Eigen/Dense>

namespace affrigid {

/// Two coinciding invariants closer than this mark a configuration as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-10;

/**
 * Two-polar splitting phi = L * Diag(exp q) * R^{-1} of an orientation-preserving
 * internal configuration. L and R are special orthogonal, q is sorted descending.
 */
struct TwoPolarConfig {
    Eigen::MatrixXd L;
    Eigen::VectorXd q;
    Eigen::MatrixXd R;
    bool degenerate = false;

    int dim() const { return static_cast<int>(q.size()); }
};

/// Throws std::domain_error for non-square input, n < 2 or det <= 0.
TwoPolarConfig two_polar_decompose(const Eigen::MatrixXd& phi);

/// L * Diag(exp q) * R^T.
Eigen::MatrixXd reconstruct(const TwoPolarConfig& config);

enum class WeightKind { Lambda, L };

struct MeasureWeight {
    WeightKind kind;
    double value;
};

/// prod_{a<b} |sh(q^a - q^b)|
MeasureWeight weight_lambda(const Eigen::VectorXd& q);

/// prod_{a<b} |(Q^a + Q^b)(Q^a - Q^b)|; every Q^a must be positive.
MeasureWeight weight_l(const Eigen::VectorXd& Q);

enum class HaarTarget { AlphaFullGroup, LambdaInternal };

/// Density of the Haar measure relative to Lebesgue measure on matrix entries:
/// det^{-n} for the internal (linear) group, det^{-n-1} for the full affine group.
double haar_density_ratio(const Eigen::MatrixXd& phi, HaarTarget target);

} // namespace affrigid
