#include "affrigid/representations.hpp"

#include "affrigid/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace affrigid {

namespace {

constexpr double kPi = std::numbers::pi;

int doubled_from_spin(double spin)
{
    const double twice = 2.0 * spin;
    const double r = std::round(twice);
    if (std::abs(twice - r) > 1e-9)
        throw std::domain_error("spin must be an integer or half-integer");
    return static_cast<int>(r);
}

} // namespace

RepLabel RepLabel::so2(int m) { return RepLabel(Group::SO2, m); }

RepLabel RepLabel::so3(int s)
{
    if (s < 0)
        throw std::domain_error("spin must be non-negative");
    return RepLabel(Group::SO3, 2 * s);
}

RepLabel RepLabel::su2(int twice_spin)
{
    if (twice_spin < 0)
        throw std::domain_error("spin must be non-negative");
    return RepLabel(Group::SU2, twice_spin);
}

RepLabel RepLabel::from_spin(Group group, double spin)
{
    const int twice = doubled_from_spin(spin);
    switch (group) {
    case Group::SO2:
        if (twice % 2 != 0)
            throw std::domain_error("SO(2) labels must be integers");
        return so2(twice / 2);
    case Group::SO3:
        if (twice % 2 != 0)
            throw std::domain_error("SO(3) labels must be integers; half-integer spin needs SU(2)");
        return so3(twice / 2);
    case Group::SU2:
        return su2(twice);
    }
    throw std::domain_error("unknown group");
}

int RepLabel::twice_spin() const
{
    if (group_ == Group::SO2)
        throw std::domain_error("SO(2) labels carry a charge, not a spin");
    return raw_;
}

double RepLabel::spin() const { return group_ == Group::SO2 ? raw_ : 0.5 * raw_; }

std::string to_string(Group g)
{
    switch (g) {
    case Group::SO2: return "SO2";
    case Group::SO3: return "SO3";
    case Group::SU2: return "SU2";
    }
    return "?";
}

std::string RepLabel::to_string() const
{
    std::string v;
    if (group_ == Group::SO2 || raw_ % 2 == 0)
        v = std::to_string(group_ == Group::SO2 ? raw_ : raw_ / 2);
    else
        v = std::to_string(raw_) + "/2";
    return affrigid::to_string(group_) + ":" + v;
}

RepLabel RepLabel::parse(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::domain_error("representation label needs the form GROUP:value, got '" + text + "'");
    const std::string g = text.substr(0, colon);
    const std::string v = text.substr(colon + 1);
    Group group;
    if (g == "SO2")
        group = Group::SO2;
    else if (g == "SO3")
        group = Group::SO3;
    else if (g == "SU2")
        group = Group::SU2;
    else
        throw std::domain_error("unknown group '" + g + "'");
    try {
        const auto slash = v.find('/');
        if (slash != std::string::npos) {
            if (v.substr(slash + 1) != "2")
                throw std::domain_error("only halves are admissible in '" + text + "'");
            return from_spin(group, 0.5 * std::stoi(v.substr(0, slash)));
        }
        return from_spin(group, std::stod(v));
    } catch (const std::invalid_argument&) {
        throw std::domain_error("malformed representation label '" + text + "'");
    }
}

GeneratorSet generators(const RepLabel& label, double hbar)
{
    GeneratorSet out;
    out.label = label;
    out.hbar = hbar;
    if (label.group() == Group::SO2) {
        for (auto& s : out.S)
            s = Eigen::MatrixXcd::Zero(1, 1);
        out.S[2](0, 0) = hbar * label.raw();
        return out;
    }
    const int d = label.dimension();
    const double s = label.spin();
    Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd s3 = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = s - k;
        s3(k, k) = hbar * m;
        if (k > 0) // S+ |m> = hbar sqrt(s(s+1) - m(m+1)) |m+1>
            plus(k - 1, k) = hbar * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    const Eigen::MatrixXcd minus = plus.adjoint();
    out.S[0] = 0.5 * (plus + minus);
    out.S[1] = cdouble(0.0, -0.5) * (plus - minus);
    out.S[2] = s3;
    return out;
}

Eigen::Matrix3d rotation_matrix(const RotationVector& kv)
{
    const double k = kv.angle();
    if (k == 0.0)
        return Eigen::Matrix3d::Identity();
    const Eigen::Vector3d n = kv.k / k;
    Eigen::Matrix3d cross;
    cross << 0.0, -n(2), n(1),
             n(2), 0.0, -n(0),
             -n(1), n(0), 0.0;
    return std::cos(k) * Eigen::Matrix3d::Identity() + (1.0 - std::cos(k)) * n * n.transpose()
        + std::sin(k) * cross;
}

Eigen::Matrix2cd su2_element(const RotationVector& kv)
{
    const double k = kv.angle();
    if (k == 0.0)
        return Eigen::Matrix2cd::Identity();
    const Eigen::Vector3d n = kv.k / k;
    const cdouble i(0.0, 1.0);
    Eigen::Matrix2cd ndots;
    ndots << n(2), cdouble(n(0), -n(1)),
             cdouble(n(0), n(1)), -n(2);
    return std::cos(0.5 * k) * Eigen::Matrix2cd::Identity() - i * std::sin(0.5 * k) * ndots;
}

Eigen::MatrixXcd wigner_D(const RepLabel& label, const RotationVector& k)
{
    if (label.group() == Group::SO2) {
        Eigen::MatrixXcd d(1, 1);
        d(0, 0) = std::exp(cdouble(0.0, -label.raw() * k.k(2)));
        return d;
    }
    const int dim = label.dimension();
    if (dim == 1)
        return Eigen::MatrixXcd::Identity(1, 1);
    const GeneratorSet g = generators(label, 1.0);
    const Eigen::MatrixXcd H = k.k(0) * g.S[0] + k.k(1) * g.S[1] + k.k(2) * g.S[2];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd phases(dim);
    for (int a = 0; a < dim; ++a)
        phases(a) = std::exp(cdouble(0.0, -es.eigenvalues()(a)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

RotationVector rotation_vector_from_matrix(const Eigen::Matrix3d& W)
{
    const Eigen::Vector3d skew(W(2, 1) - W(1, 2), W(0, 2) - W(2, 0), W(1, 0) - W(0, 1));
    const double c = 0.5 * (W.trace() - 1.0);
    const double s = 0.5 * skew.norm();
    const double angle = std::atan2(s, c);
    if (angle < 1e-12)
        return RotationVector(0.5 * skew);
    if (angle < 0.5 * kPi)
        return RotationVector(angle / s * 0.5 * skew);
    // W = c I + (1 - c) n n^T + sin(angle) [n]_x, so the symmetric part gives n n^T exactly
    const Eigen::Matrix3d nn = (0.5 * (W + W.transpose()) - c * Eigen::Matrix3d::Identity()) / (1.0 - c);
    int col = 0;
    nn.diagonal().maxCoeff(&col);
    Eigen::Vector3d n = nn.col(col) / std::sqrt(nn(col, col));
    if (n.dot(skew) < 0.0)
        n = -n;
    return RotationVector(angle * n.normalized());
}

Eigen::MatrixXcd represent(const RepLabel& label, const Eigen::Matrix3d& W)
{
    return wigner_D(label, rotation_vector_from_matrix(W));
}

double haar_weight_rotgroup(double k, Group group)
{
    const double top = group == Group::SU2 ? 2.0 * kPi : kPi;
    if (group == Group::SO2)
        throw std::domain_error("the rotation-vector Haar density applies to SO(3) and SU(2)");
    if (!(k >= 0.0) || k > top * (1.0 + 1e-14))
        throw std::domain_error("rotation angle outside the parameter range of the group");
    const double s = std::sin(0.5 * k);
    return 4.0 * s * s;
}

double haar_volume(Group group)
{
    switch (group) {
    case Group::SO3: return 8.0 * kPi * kPi;
    case Group::SU2: return 16.0 * kPi * kPi;
    case Group::SO2: return 2.0 * kPi;
    }
    return 0.0;
}

std::vector<HaarNode> haar_quadrature(Group group, int order)
{
    if (order < 2)
        throw std::domain_error("Haar quadrature order must be at least 2");
    if (group == Group::SO2)
        throw std::domain_error("Haar quadrature is provided for SO(3) and SU(2)");
    const double top = group == Group::SU2 ? 2.0 * kPi : kPi;
    const GaussRule rk = gauss_legendre(order, 0.0, top);
    const GaussRule rc = gauss_legendre(order, -1.0, 1.0);
    const int nphi = 2 * order;
    const double dphi = 2.0 * kPi / nphi;

    std::vector<HaarNode> nodes;
    nodes.reserve(static_cast<std::size_t>(order) * order * nphi);
    for (int a = 0; a < order; ++a) {
        const double k = rk.nodes[a];
        const double wk = rk.weights[a] * haar_weight_rotgroup(k, group);
        for (int b = 0; b < order; ++b) {
            const double ct = rc.nodes[b];
            const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int c = 0; c < nphi; ++c) {
                const double phi = (c + 0.5) * dphi;
                const Eigen::Vector3d n(st * std::cos(phi), st * std::sin(phi), ct);
                nodes.push_back({RotationVector(k * n), wk * rc.weights[b] * dphi});
            }
        }
    }
    return nodes;
}

} // namespace affrigid
