#include "affrigid/group_geometry.hpp"
#include "affrigid/peter_weyl.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace affrigid;
using std::numbers::pi;

namespace {

QGrid cube_grid(int n, double lo, double hi, int count)
{
    return QGrid(std::vector<GridAxis>(n, GridAxis{lo, hi, count}));
}

ChannelAmplitude random_channel(const RepLabel& a, const RepLabel& b, const QGrid& g, std::mt19937_64& rng,
                                int row = 0, int col = 0)
{
    std::normal_distribution<double> d;
    auto ch = ChannelAmplitude::zeros(a, b, g, row, col);
    for (auto& m : ch.values)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = cdouble(d(rng), d(rng));
    return ch;
}

// Group average that projects an amplitude onto the W-covariant subspace.
ChannelAmplitude symmetrize(const ChannelAmplitude& f)
{
    const int n = f.grid.dim();
    const auto group = signed_permutation_group(n);
    ChannelAmplitude out = ChannelAmplitude::zeros(f.alpha, f.beta, f.grid, f.row, f.col);
    for (const auto& W : group) {
        const Eigen::MatrixXcd DaInv = represent_matrix(f.alpha, W).adjoint();
        const Eigen::MatrixXcd Db = represent_matrix(f.beta, W);
        for (std::size_t i = 0; i < f.grid.size(); ++i) {
            const auto idx = f.grid.multi_index(i);
            std::vector<int> target(n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (W(a, b) != 0.0)
                        target[a] = idx[b];
            out.values[i] += DaInv * f.values[f.grid.flat_index(target)] * Db;
        }
    }
    for (auto& m : out.values)
        m /= static_cast<double>(group.size());
    return out;
}

} // namespace

TEST(Grid, IndexingRoundtrip)
{
    const QGrid g({GridAxis{0.0, 1.0, 3}, GridAxis{-1.0, 1.0, 5}});
    EXPECT_EQ(g.size(), 15u);
    for (std::size_t i = 0; i < g.size(); ++i)
        EXPECT_EQ(g.flat_index(g.multi_index(i)), i);
    EXPECT_EQ(g.multi_index(1)[1], 1);
    EXPECT_NEAR(g.point(14)(0), 1.0, 1e-15);
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        total += g.trapezoid_weight(i);
    EXPECT_NEAR(total, 2.0, 1e-14);
}

TEST(Evaluate, TrivialChannelIsConstant)
{
    Expansion e;
    auto ch = ChannelAmplitude::zeros(RepLabel::so3(0), RepLabel::so3(0), cube_grid(3, -1.0, 1.0, 3));
    for (auto& m : ch.values)
        m(0, 0) = 2.5;
    e.channels.push_back(ch);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        const RotationVector L(u(rng), u(rng), u(rng)), R(u(rng), u(rng), u(rng));
        EXPECT_LT(std::abs(evaluate(e, L, Eigen::Vector3d(u(rng), u(rng), u(rng)), R) - 2.5), 1e-14);
    }
}

TEST(Evaluate, PlanarFormMatchesRotationForm)
{
    std::mt19937_64 rng(3);
    const QGrid g = cube_grid(2, -1.0, 1.0, 4);
    Expansion e;
    for (int m = -2; m <= 2; ++m)
        e.channels.push_back(random_channel(RepLabel::so2(m), RepLabel::so2(1 - m), g, rng));
    const Eigen::Vector2d q(0.3, -0.2);
    for (double a : {0.0, 0.7, -2.1})
        for (double b : {0.0, 1.3}) {
            const cdouble planar = evaluate_planar(e, a, q, b);
            // D^m(L) = exp(-i m k3), so the planar phase e^{i m alpha} corresponds to L at angle -alpha.
            const cdouble general = evaluate(e, RotationVector(0.0, 0.0, -a), q, RotationVector(0.0, 0.0, b));
            EXPECT_LT(std::abs(planar - general), 1e-13);
        }
    const Eigen::Vector2d q0(-1.0, -1.0);
    cdouble expect = 0.0;
    for (const auto& ch : e.channels)
        expect += ch.values[0](0, 0) * std::exp(cdouble(0.0, ch.alpha.raw() * 0.4 + ch.beta.raw() * 0.9));
    EXPECT_LT(std::abs(evaluate_planar(e, 0.4, q0, 0.9) - expect), 1e-13);
}

TEST(Evaluate, LinearityAndDomain)
{
    std::mt19937_64 rng(5);
    const QGrid g = cube_grid(3, 0.0, 1.0, 3);
    Expansion a, b, sum;
    a.channels.push_back(random_channel(RepLabel::so3(1), RepLabel::so3(0), g, rng, 2, 0));
    b.channels.push_back(random_channel(RepLabel::so3(1), RepLabel::so3(1), g, rng, 1, 2));
    sum.channels = {a.channels[0], b.channels[0]};
    const RotationVector L(0.1, 0.2, 0.3), R(-0.4, 0.5, 0.6);
    const Eigen::Vector3d q(0.25, 0.5, 0.75);
    EXPECT_LT(std::abs(evaluate(sum, L, q, R) - evaluate(a, L, q, R) - evaluate(b, L, q, R)), 1e-14);
    EXPECT_THROW(evaluate(a, L, Eigen::Vector3d(2.0, 0.0, 0.0), R), std::domain_error);
}

TEST(Evaluate, InterpolationIsExactForMultilinearData)
{
    const QGrid g({GridAxis{0.0, 2.0, 5}, GridAxis{-1.0, 1.0, 3}});
    auto ch = ChannelAmplitude::zeros(RepLabel::so2(0), RepLabel::so2(0), g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto p = g.point(i);
        ch.values[i](0, 0) = 1.0 + 2.0 * p(0) - p(1) + 0.5 * p(0) * p(1);
    }
    const Eigen::Vector2d q(1.3, 0.37);
    EXPECT_NEAR(ch.interpolate(q)(0, 0).real(), 1.0 + 2.6 - 0.37 + 0.5 * 1.3 * 0.37, 1e-14);
}

TEST(ScalarProduct, BasicProperties)
{
    std::mt19937_64 rng(7);
    const QGrid g = cube_grid(3, -1.0, 1.0, 4);
    Expansion zero, a, b, other;
    zero.channels.push_back(ChannelAmplitude::zeros(RepLabel::so3(1), RepLabel::so3(1), g));
    a.channels.push_back(random_channel(RepLabel::so3(1), RepLabel::so3(1), g, rng));
    b.channels.push_back(random_channel(RepLabel::so3(1), RepLabel::so3(1), g, rng));
    other.channels.push_back(random_channel(RepLabel::so3(2), RepLabel::so3(0), g, rng));
    EXPECT_EQ(scalar_product(zero, zero), 0.0);
    EXPECT_GT(scalar_product(a, a).real(), 0.0);
    EXPECT_NEAR(scalar_product(a, a).imag(), 0.0, 1e-13);
    EXPECT_EQ(scalar_product(a, other), 0.0);
    EXPECT_LT(std::abs(scalar_product(a, b) - std::conj(scalar_product(b, a))), 1e-13);
    Expansion mismatch;
    mismatch.channels.push_back(random_channel(RepLabel::so3(1), RepLabel::so3(1), cube_grid(3, -1.0, 1.0, 5), rng));
    EXPECT_THROW(scalar_product(a, mismatch), std::domain_error);
}

TEST(ScalarProduct, PlanarMatchesFourDimensionalQuadrature)
{
    std::mt19937_64 rng(13);
    const QGrid g({GridAxis{-1.0, 1.5, 6}, GridAxis{-0.5, 2.0, 5}});
    Expansion e1, e2;
    for (int m = -1; m <= 1; ++m)
        for (int n = -1; n <= 1; ++n) {
            e1.channels.push_back(random_channel(RepLabel::so2(m), RepLabel::so2(n), g, rng));
            e2.channels.push_back(random_channel(RepLabel::so2(m), RepLabel::so2(n), g, rng));
        }
    const int na = 16;
    cdouble brute = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Eigen::VectorXd q = g.point(i);
        const double w = g.trapezoid_weight(i) * std::abs(std::sinh(q(0) - q(1)));
        for (int ia = 0; ia < na; ++ia)
            for (int ib = 0; ib < na; ++ib) {
                const double a = 2.0 * pi * ia / na, b = 2.0 * pi * ib / na;
                brute += w * std::conj(evaluate_planar(e1, a, q, b)) * evaluate_planar(e2, a, q, b);
            }
    }
    brute /= static_cast<double>(na * na);
    EXPECT_LT(std::abs(brute - scalar_product(e1, e2)), 1e-8 * std::abs(brute));
}

TEST(ScalarProduct, SpatialMatchesHaarQuadrature)
{
    std::mt19937_64 rng(17);
    const QGrid g({GridAxis{-0.5, 0.5, 2}, GridAxis{0.0, 1.0, 2}, GridAxis{0.2, 0.9, 2}});
    Expansion e1, e2;
    e1.channels.push_back(random_channel(RepLabel::so3(1), RepLabel::so3(1), g, rng, 0, 2));
    e1.channels.push_back(random_channel(RepLabel::so3(0), RepLabel::so3(1), g, rng, 0, 1));
    e2.channels.push_back(random_channel(RepLabel::so3(1), RepLabel::so3(1), g, rng, 0, 2));
    e2.channels.push_back(random_channel(RepLabel::so3(0), RepLabel::so3(1), g, rng, 0, 1));

    // Matrix elements at every Haar node are tabulated once; evaluate() is checked against
    // the same contraction at a few nodes.
    const auto nodes = haar_quadrature(Group::SO3, 8);
    const RepLabel s1 = RepLabel::so3(1);
    std::vector<Eigen::MatrixXcd> D1L, D1R;
    for (const auto& nd : nodes) {
        D1L.push_back(wigner_D(s1, nd.k));
        D1R.push_back(wigner_D(s1, RotationVector(-nd.k.k)));
    }
    auto psi = [&](const Expansion& e, std::size_t l, std::size_t r, std::size_t qi) {
        const auto& a = e.channels[0];
        const auto& b = e.channels[1];
        return (D1L[l].row(a.row) * a.values[qi] * D1R[r].col(a.col))(0, 0)
            + (b.values[qi] * D1R[r].col(b.col))(0, 0);
    };
    for (std::size_t l : {0ul, 37ul, 500ul})
        for (std::size_t r : {3ul, 900ul}) {
            const Eigen::VectorXd q = g.point(5);
            EXPECT_LT(std::abs(psi(e1, l, r, 5) - evaluate(e1, nodes[l].k, q, nodes[r].k)), 1e-13);
        }
    cdouble brute = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = g.trapezoid_weight(i) * weight_lambda(g.point(i)).value;
        cdouble s = 0.0;
        for (std::size_t l = 0; l < nodes.size(); ++l)
            for (std::size_t r = 0; r < nodes.size(); ++r)
                s += nodes[l].weight * nodes[r].weight * std::conj(psi(e1, l, r, i)) * psi(e2, l, r, i);
        brute += w * s;
    }
    const double vol = haar_volume(Group::SO3);
    brute /= vol * vol;
    EXPECT_LT(std::abs(brute - scalar_product(e1, e2)), 1e-8 * std::max(1.0, std::abs(brute)));
}

TEST(Superselection, AdmissibilityTable)
{
    struct Case {
        double s, j;
        TargetSpace t;
        bool ok;
    };
    const Case cases[] = {
        {0, 0, TargetSpace::GLPlus, true},        {1, 0, TargetSpace::GLPlus, true},
        {2, 1, TargetSpace::GLPlus, true},        {3, 3, TargetSpace::GLPlus, true},
        {0.5, 0.5, TargetSpace::GLPlus, false},   {0.5, 0, TargetSpace::GLPlus, false},
        {1, 0.5, TargetSpace::GLPlus, false},     {1.5, 2.5, TargetSpace::GLPlus, false},
        {0, 1.5, TargetSpace::GLPlus, false},     {2, 2, TargetSpace::GLPlus, true},
        {0.5, 0.5, TargetSpace::DoubleCover, true}, {0.5, 1.5, TargetSpace::DoubleCover, true},
        {0, 0, TargetSpace::DoubleCover, true},   {1, 2, TargetSpace::DoubleCover, true},
        {2.5, 0.5, TargetSpace::DoubleCover, true}, {0.5, 0, TargetSpace::DoubleCover, false},
        {1, 0.5, TargetSpace::DoubleCover, false}, {1.5, 1, TargetSpace::DoubleCover, false},
        {0, 2.5, TargetSpace::DoubleCover, false}, {3, 0.5, TargetSpace::DoubleCover, false},
    };
    for (const auto& c : cases) {
        const RepLabel a = RepLabel::from_spin(Group::SU2, c.s), b = RepLabel::from_spin(Group::SU2, c.j);
        std::string why;
        EXPECT_EQ(labels_admissible(a, b, c.t, &why), c.ok) << c.s << " " << c.j << " " << to_string(c.t);
        EXPECT_EQ(why.empty(), c.ok);
    }
}

TEST(Superselection, ReportNamesTheChannel)
{
    Expansion e;
    e.target = TargetSpace::GLPlus;
    const QGrid g = cube_grid(3, 0.0, 1.0, 2);
    e.channels.push_back(ChannelAmplitude::zeros(RepLabel::so3(1), RepLabel::so3(0), g));
    e.channels.push_back(ChannelAmplitude::zeros(RepLabel::su2(1), RepLabel::su2(1), g));
    const auto rep = validate_superselection(e);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].channel, 1u);
    e.target = TargetSpace::DoubleCover;
    EXPECT_TRUE(validate_superselection(e).ok());
}

TEST(WSymmetry, SignedPermutationGroup)
{
    EXPECT_EQ(signed_permutation_group(2).size(), 4u);
    EXPECT_EQ(signed_permutation_group(3).size(), 24u);
    Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
    bad(0, 0) = -1.0;
    EXPECT_THROW(require_signed_permutation(bad), std::domain_error);
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    rot(0, 1) = 0.5;
    EXPECT_THROW(require_signed_permutation(rot), std::domain_error);
    Eigen::Matrix3d P;
    P << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    const Eigen::Vector3d q(1.0, 2.0, 3.0);
    const Eigen::Vector3d pq = permute_invariants(P, q);
    const Eigen::Matrix3d lhs = pq.array().exp().matrix().asDiagonal();
    const Eigen::Matrix3d rhs = P * q.array().exp().matrix().asDiagonal() * P.transpose();
    EXPECT_LT((lhs - rhs).norm(), 1e-13);
}

TEST(WSymmetry, TrivialAndIdentity)
{
    auto f = ChannelAmplitude::zeros(RepLabel::so3(0), RepLabel::so3(0), cube_grid(3, -1.0, 1.0, 3));
    for (std::size_t i = 0; i < f.grid.size(); ++i)
        f.values[i](0, 0) = f.grid.point(i).sum();
    for (const auto& W : signed_permutation_group(3))
        EXPECT_LT(validate_w_symmetry(f, W), 1e-14);
    std::mt19937_64 rng(19);
    const auto r = random_channel(RepLabel::so3(1), RepLabel::so3(2), cube_grid(3, -1.0, 1.0, 3), rng);
    EXPECT_LT(validate_w_symmetry(r, Eigen::Matrix3d::Identity()), 1e-14);
}

TEST(WSymmetry, GroupAveragedAmplitudesAreCovariant)
{
    std::mt19937_64 rng(23);
    const QGrid g3 = cube_grid(3, -1.0, 1.0, 3);
    const std::pair<RepLabel, RepLabel> labels[] = {
        {RepLabel::so3(1), RepLabel::so3(1)},
        {RepLabel::so3(1), RepLabel::so3(0)},
        {RepLabel::su2(1), RepLabel::su2(1)},
        {RepLabel::su2(3), RepLabel::su2(1)},
    };
    for (const auto& [a, b] : labels) {
        const auto f = symmetrize(random_channel(a, b, g3, rng));
        for (const auto& W : signed_permutation_group(3))
            EXPECT_LT(validate_w_symmetry(f, W), 1e-12) << a.to_string() << " " << b.to_string();
        const auto raw = random_channel(a, b, g3, rng);
        double worst = 0.0;
        for (const auto& W : signed_permutation_group(3))
            worst = std::max(worst, validate_w_symmetry(raw, W));
        EXPECT_GT(worst, 1e-3);
    }
    const QGrid g2 = cube_grid(2, -1.0, 1.0, 5);
    for (int m = -2; m <= 2; ++m) {
        const auto f = symmetrize(random_channel(RepLabel::so2(m), RepLabel::so2(1), g2, rng));
        for (const auto& W : signed_permutation_group(2))
            EXPECT_LT(validate_w_symmetry(f, W), 1e-12);
    }
}

TEST(WSymmetry, RejectsUnequalAxes)
{
    const QGrid g({GridAxis{0.0, 1.0, 3}, GridAxis{0.0, 2.0, 3}});
    const auto f = ChannelAmplitude::zeros(RepLabel::so2(0), RepLabel::so2(0), g);
    Eigen::Matrix2d W;
    W << 0, -1, 1, 0;
    EXPECT_THROW(validate_w_symmetry(f, W), std::domain_error);
}

TEST(TextIo, ExportImportIsLossless)
{
    std::mt19937_64 rng(29);
    Expansion e;
    e.target = TargetSpace::DoubleCover;
    const QGrid g({GridAxis{-1.0, 1.0, 3}, GridAxis{0.1, 0.7, 2}, GridAxis{0.0, 3.0, 4}});
    e.channels.push_back(random_channel(RepLabel::su2(1), RepLabel::su2(3), g, rng, 1, 2));
    e.channels.push_back(random_channel(RepLabel::su2(2), RepLabel::su2(0), g, rng, 0, 0));
    std::stringstream ss;
    export_amplitudes(ss, e);
    const Expansion back = import_amplitudes(ss);
    ASSERT_EQ(back.channels.size(), e.channels.size());
    EXPECT_EQ(back.target, e.target);
    for (std::size_t c = 0; c < e.channels.size(); ++c) {
        EXPECT_EQ(back.channels[c].alpha, e.channels[c].alpha);
        EXPECT_EQ(back.channels[c].beta, e.channels[c].beta);
        EXPECT_EQ(back.channels[c].row, e.channels[c].row);
        EXPECT_EQ(back.channels[c].col, e.channels[c].col);
        EXPECT_TRUE(back.channels[c].grid == e.channels[c].grid);
        for (std::size_t i = 0; i < g.size(); ++i)
            EXPECT_EQ(back.channels[c].values[i], e.channels[c].values[i]);
    }
    std::stringstream broken("target GLPlus\nchannels 1\nchannel SO3:1\n");
    EXPECT_THROW(import_amplitudes(broken), std::exception);
}
