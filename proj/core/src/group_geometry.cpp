#include "affrigid/group_geometry.hpp"

#include "affrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace affrigid {

namespace {

void require_square(const Eigen::MatrixXd& phi)
{
    if (phi.rows() != phi.cols())
        throw std::domain_error("configuration matrix must be square");
    if (phi.rows() < 2)
        throw std::domain_error("configuration matrix must have dimension n >= 2");
    if (!phi.allFinite())
        throw std::domain_error("configuration matrix has non-finite entries");
}

} // namespace

TwoPolarConfig two_polar_decompose(const Eigen::MatrixXd& phi)
{
    require_square(phi);
    const double det = phi.determinant();
    if (!(det > 0.0))
        throw std::domain_error("two-polar decomposition requires det(phi) > 0");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("singular value iteration did not converge");

    const Eigen::VectorXd& sv = svd.singularValues();
    const int n = static_cast<int>(sv.size());
    if (sv.minCoeff() <= 0.0 || !sv.allFinite())
        throw NumericalError("singular values are not strictly positive");

    // Eigen already returns descending order; a stable sort keeps ties in input order.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sv(a) > sv(b); });

    TwoPolarConfig out;
    out.L.resize(n, n);
    out.R.resize(n, n);
    out.q.resize(n);
    for (int k = 0; k < n; ++k) {
        out.L.col(k) = svd.matrixU().col(order[k]);
        out.R.col(k) = svd.matrixV().col(order[k]);
        out.q(k) = std::log(sv(order[k]));
    }
    // det(phi) > 0 forces det L = det R; flipping the same column of both keeps L D R^T.
    if (out.L.determinant() < 0.0) {
        out.L.col(n - 1) *= -1.0;
        out.R.col(n - 1) *= -1.0;
    }

    for (int a = 0; a + 1 < n; ++a)
        if (std::abs(out.q(a) - out.q(a + 1)) < kDegeneracyTolerance)
            out.degenerate = true;
    return out;
}

Eigen::MatrixXd reconstruct(const TwoPolarConfig& config)
{
    return config.L * config.q.array().exp().matrix().asDiagonal() * config.R.transpose();
}

MeasureWeight weight_lambda(const Eigen::VectorXd& q)
{
    double p = 1.0;
    for (Eigen::Index a = 0; a < q.size(); ++a)
        for (Eigen::Index b = a + 1; b < q.size(); ++b)
            p *= std::abs(std::sinh(q(a) - q(b)));
    return {WeightKind::Lambda, p};
}

MeasureWeight weight_l(const Eigen::VectorXd& Q)
{
    for (Eigen::Index a = 0; a < Q.size(); ++a)
        if (!(Q(a) > 0.0))
            throw std::domain_error("deformation invariants Q^a must be positive");
    double p = 1.0;
    for (Eigen::Index a = 0; a < Q.size(); ++a)
        for (Eigen::Index b = a + 1; b < Q.size(); ++b)
            p *= std::abs((Q(a) + Q(b)) * (Q(a) - Q(b)));
    return {WeightKind::L, p};
}

double haar_density_ratio(const Eigen::MatrixXd& phi, HaarTarget target)
{
    require_square(phi);
    const double det = phi.determinant();
    if (!(det > 0.0))
        throw std::domain_error("Haar density requires det(phi) > 0");
    const double n = static_cast<double>(phi.rows());
    const double power = target == HaarTarget::LambdaInternal ? -n : -n - 1.0;
    return std::pow(det, power);
}

} // namespace affrigid
