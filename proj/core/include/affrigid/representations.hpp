#pragma once

#include <Eigen/Dense>

#include <array>
#include <compare>
#include <complex>
#include <string>
#include <vector>

namespace affrigid {

using cdouble = std::complex<double>;

enum class Group { SO2, SO3, SU2 };

/**
 * Irreducible representation label. Spins of SO(3)/SU(2) are stored doubled so
 * that half-integers compare exactly; an SO(2) label is the integer charge m.
 */
class RepLabel {
public:
    RepLabel() = default;

    static RepLabel so2(int m);
    static RepLabel so3(int s);
    /// Spin given as 2s; any non-negative value is admissible for SU(2).
    static RepLabel su2(int twice_spin);
    /// Accepts integers and half-integers (0.5, 1.5, ...) within 1e-9.
    static RepLabel from_spin(Group group, double spin);

    Group group() const { return group_; }
    /// 2s for SO(3)/SU(2), the charge m for SO(2).
    int raw() const { return raw_; }
    int twice_spin() const;
    double spin() const;
    int dimension() const { return group_ == Group::SO2 ? 1 : raw_ + 1; }
    bool is_integer() const { return group_ == Group::SO2 || raw_ % 2 == 0; }

    /// "SO2:-3", "SO3:1", "SU2:3/2"
    std::string to_string() const;
    static RepLabel parse(const std::string& text);

    auto operator<=>(const RepLabel&) const = default;

private:
    RepLabel(Group g, int raw) : group_(g), raw_(raw) {}
    Group group_ = Group::SU2;
    int raw_ = 0;
};

std::string to_string(Group g);

/// Hermitian spin matrices in the ladder basis, S_3 = hbar * diag(s, s-1, ..., -s).
struct GeneratorSet {
    RepLabel label;
    double hbar = 1.0;
    std::array<Eigen::MatrixXcd, 3> S;
};

GeneratorSet generators(const RepLabel& label, double hbar = 1.0);

/// Rotation vector: direction is the oriented axis, modulus the angle in radians.
struct RotationVector {
    Eigen::Vector3d k = Eigen::Vector3d::Zero();

    RotationVector() = default;
    explicit RotationVector(const Eigen::Vector3d& v) : k(v) {}
    RotationVector(double k1, double k2, double k3) : k(k1, k2, k3) {}
    double angle() const { return k.norm(); }
};

/// exp(k^a E_a) with (E_a)_{bc} = -eps_{abc}; the active rotation u -> u + k x u + ...
Eigen::Matrix3d rotation_matrix(const RotationVector& k);

/// cos(k/2) I - i sin(k/2) n.sigma
Eigen::Matrix2cd su2_element(const RotationVector& k);

/// D(k) = exp(-i k^a S_a / hbar) in the ladder basis; for SO(2) only k_3 is used.
Eigen::MatrixXcd wigner_D(const RepLabel& label, const RotationVector& k);

/// Inverse of rotation_matrix, returning an angle in [0, pi].
RotationVector rotation_vector_from_matrix(const Eigen::Matrix3d& W);

/**
 * Representation matrix of a rotation given as a 3x3 matrix. Half-integer labels
 * are defined only up to sign here; products over equal-halfness pairs are not.
 */
Eigen::MatrixXcd represent(const RepLabel& label, const Eigen::Matrix3d& W);

/// Radial factor 4 sin^2(k/2) of the Haar density in rotation-vector coordinates.
double haar_weight_rotgroup(double k, Group group);

struct HaarNode {
    RotationVector k;
    double weight;
};

/// Total Haar volume in the unnormalised convention: 8 pi^2 (SO3), 16 pi^2 (SU2).
double haar_volume(Group group);

/**
 * Product rule in (k, cos theta, phi): Gauss-Legendre in k and cos theta with
 * `order` points each, uniform in phi with 2*order points.
 */
std::vector<HaarNode> haar_quadrature(Group group, int order);

} // namespace affrigid
