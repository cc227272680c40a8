#include "affrigid/channel2d.hpp"
#include "affrigid/model.hpp"
#include "affrigid/potential.hpp"
#include "affrigid/sector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

using namespace affrigid;

namespace {

ModelParams params(double I, double A, double B, int n = 2, double hbar = 1.0)
{
    ModelParams p;
    p.I = I;
    p.A = A;
    p.B = B;
    p.n = n;
    p.hbar = hbar;
    return p;
}

std::string gate_message(ModelKind k, const ModelParams& p)
{
    try {
        check_gates(k, p);
    } catch (const std::domain_error& e) {
        return e.what();
    }
    return {};
}

const ModelKind kAllModels[] = {ModelKind::AffAff, ModelKind::MetAff, ModelKind::AffMet, ModelKind::DAlembert};

} // namespace

TEST(DerivedConstants, PlanarExample)
{
    const auto d = derived_constants(params(2.0, 1.0, 0.0));
    EXPECT_DOUBLE_EQ(d.alpha, 3.0);
    EXPECT_DOUBLE_EQ(d.mu, 1.5);
    EXPECT_DOUBLE_EQ(d.beta_tilde, 6.0);
    EXPECT_EQ(d.inv_beta, 0.0);
    EXPECT_TRUE(std::isinf(d.beta));
    EXPECT_DOUBLE_EQ(d.inv_mu, 1.0 / 1.5);
}

TEST(DerivedConstants, SpatialExample)
{
    const auto d = derived_constants(params(3.0, 1.0, 1.0, 3));
    EXPECT_DOUBLE_EQ(d.alpha, 4.0);
    EXPECT_DOUBLE_EQ(d.beta_tilde, 21.0);
    EXPECT_NEAR(d.mu, 8.0 / 3.0, 1e-15);
    EXPECT_NEAR(d.beta, -28.0, 1e-13);
    EXPECT_NEAR(d.inv_beta, -1.0 / 28.0, 1e-15);
}

TEST(DerivedConstants, DegenerateMu)
{
    const auto d = derived_constants(params(1.0, 1.0, 0.0));
    EXPECT_TRUE(d.mu_degenerate);
    const auto d0 = derived_constants(params(0.0, 1.0, 0.0));
    EXPECT_FALSE(d0.mu_defined);
}

TEST(Gates, MessagesNameTheInequality)
{
    EXPECT_NE(gate_message(ModelKind::AffAff, params(1.0, -1.0, 0.0)).find("A > 0"), std::string::npos);
    EXPECT_NE(gate_message(ModelKind::AffAff, params(1.0, 1.0, -0.6)).find("A + nB > 0"), std::string::npos);
    EXPECT_NE(gate_message(ModelKind::MetAff, params(1.0, 1.0, 0.0)).find("mu"), std::string::npos);
    EXPECT_NE(gate_message(ModelKind::AffMet, params(-1.0, 0.5, 0.0)).find("alpha"), std::string::npos);
    EXPECT_NE(gate_message(ModelKind::MetAff, params(2.0, 1.0, -1.5)).find("beta_tilde"), std::string::npos);
    EXPECT_NE(gate_message(ModelKind::DAlembert, params(0.0, 1.0, 0.0)).find("I > 0"), std::string::npos);
    EXPECT_NE(gate_message(ModelKind::AffAff, params(1.0, 1.0, 0.0, 2, 0.0)).find("hbar"), std::string::npos);
    EXPECT_TRUE(gate_message(ModelKind::MetAff, params(2.0, 1.0, 0.0)).empty());
    EXPECT_THROW(check_gates(ModelKind::AffAff, params(1.0, 1.0, 0.0, 4)), std::domain_error);
}

TEST(Models, ParseRoundtrip)
{
    for (ModelKind k : kAllModels)
        EXPECT_EQ(parse_model_kind(to_string(k)), k);
    EXPECT_EQ(parse_model_kind("aff-met"), ModelKind::AffMet);
    EXPECT_THROW(parse_model_kind("rigid"), std::domain_error);
}

TEST(Casimirs, Examples)
{
    EXPECT_DOUBLE_EQ(kinetic_from_casimirs(ModelKind::AffAff, params(1.0, 1.0, 0.0), 2.0, 0.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(kinetic_from_casimirs(ModelKind::AffAff, params(1.0, 1.0, 1.0), 0.0, 3.0, 0.0),
                     -3.0 / (2.0 * 1.0 * 3.0));
    EXPECT_DOUBLE_EQ(kinetic_from_casimirs(ModelKind::MetAff, params(2.0, 1.0, 0.0), 3.0, 5.0, 1.5),
                     3.0 / 6.0 + 0.0 + 1.5 / 3.0);
    EXPECT_THROW(kinetic_from_casimirs(ModelKind::DAlembert, params(1.0, 1.0, 0.0), 1.0, 1.0, 1.0),
                 std::domain_error);
}

TEST(Potentials, LibraryExamples)
{
    EXPECT_EQ(PotentialSpec::zero()(3.0), 0.0);
    const auto h = PotentialSpec::harmonic(2.0, 1.0);
    EXPECT_DOUBLE_EQ(h(3.0), 4.0);
    EXPECT_TRUE(std::isinf(h.at_infinity()));
    const auto w = PotentialSpec::finite_well(2.0, 1.0, 3.0);
    EXPECT_EQ(w(3.4), -2.0);
    EXPECT_EQ(w(3.5), -2.0);
    EXPECT_EQ(w(3.6), 0.0);
    EXPECT_EQ(w.at_infinity(), 0.0);
    EXPECT_THROW(PotentialSpec::finite_well(1.0, -1.0), std::domain_error);
    EXPECT_FALSE(w.describe().empty());
}

TEST(Channels, TrivialAffAff)
{
    const auto op = assemble_2d_channel(ModelKind::AffAff, params(1.0, 1.0, 0.0), 0, 0, GridSpec1D{},
                                        PotentialSpec::zero(), PotentialSpec::zero());
    EXPECT_EQ(op.x_sector.barrier_coeff(), 0.0);
    EXPECT_EQ(op.x_sector.ch_coeff, 0.0);
    EXPECT_EQ(op.x_sector.shift, 0.0);
    EXPECT_DOUBLE_EQ(op.threshold(), 0.25);
}

TEST(Channels, DiagonalAffAffCoefficients)
{
    const auto op = assemble_2d_channel(ModelKind::AffAff, params(1.0, 1.0, 0.0), 1, 1, GridSpec1D{},
                                        PotentialSpec::zero(), PotentialSpec::zero());
    EXPECT_EQ(op.x_sector.barrier_coeff(), 0.0);
    EXPECT_DOUBLE_EQ(op.x_sector.ch_coeff, 0.25);
}

TEST(Channels, MetAffCoefficients)
{
    const auto op = assemble_2d_channel(ModelKind::MetAff, params(2.0, 1.0, 0.0), 2, 1, GridSpec1D{},
                                        PotentialSpec::zero(), PotentialSpec::zero());
    EXPECT_NEAR(op.x_sector.shift, 8.0 / 3.0, 1e-15);
    EXPECT_NEAR(op.x_sector.barrier_coeff(), 1.0 / 48.0, 1e-15);
    EXPECT_NEAR(op.x_sector.ch_coeff, 9.0 / 48.0, 1e-15);
    EXPECT_NEAR(op.q_sector.coeff, 1.0 / 12.0, 1e-15);
    const auto am = assemble_2d_channel(ModelKind::AffMet, params(2.0, 1.0, 0.0), 2, 1, GridSpec1D{},
                                        PotentialSpec::zero(), PotentialSpec::zero());
    EXPECT_NEAR(am.x_sector.shift, 1.0 / 1.5, 1e-15);
}

TEST(Channels, DilatationCoefficient)
{
    const auto b0 = assemble_2d_channel(ModelKind::AffAff, params(1.0, 2.0, 0.0), 0, 0, GridSpec1D{},
                                        PotentialSpec::zero(), PotentialSpec::zero());
    EXPECT_DOUBLE_EQ(b0.q_sector.coeff, 1.0 / 8.0);
    const auto b1 = assemble_2d_channel(ModelKind::AffAff, params(1.0, 2.0, 0.5), 0, 0, GridSpec1D{},
                                        PotentialSpec::zero(), PotentialSpec::zero());
    EXPECT_DOUBLE_EQ(b1.q_sector.coeff, 1.0 / 12.0);
    EXPECT_EQ(b1.q_sector.profile, Profile::Flat);
}

TEST(Channels, AffAffIsSymmetricUnderLabelSwap)
{
    for (int m = -4; m <= 4; ++m)
        for (int n = -4; n <= 4; ++n) {
            const auto a = assemble_2d_channel(ModelKind::AffAff, params(1.0, 1.3, 0.2), m, n, GridSpec1D{},
                                               PotentialSpec::zero(), PotentialSpec::zero());
            const auto b = assemble_2d_channel(ModelKind::AffAff, params(1.0, 1.3, 0.2), n, m, GridSpec1D{},
                                               PotentialSpec::zero(), PotentialSpec::zero());
            EXPECT_EQ(a.diag_potential(), b.diag_potential());
        }
}

TEST(Channels, GeodeticPotentialDecaysToTheShift)
{
    const auto op = assemble_2d_channel(ModelKind::MetAff, params(2.0, 1.0, 0.0), 3, -1, GridSpec1D{},
                                        PotentialSpec::zero(), PotentialSpec::zero());
    const auto v = op.diag_potential();
    EXPECT_NEAR(v.back(), op.x_sector.shift, 1e-12);
    EXPECT_GT(v.front(), v.back());
}

TEST(Channels, DAlembertSectors)
{
    const auto op = assemble_2d_channel(ModelKind::DAlembert, params(2.0, 1.0, 0.0), 3, 1, GridSpec1D{},
                                        PotentialSpec::zero(), PotentialSpec::zero());
    EXPECT_EQ(op.x_sector.profile, Profile::Linear);
    EXPECT_EQ(op.q_sector.profile, Profile::Linear);
    EXPECT_DOUBLE_EQ(op.x_sector.nu, 1.0);
    EXPECT_DOUBLE_EQ(op.q_sector.nu, 2.0);
    EXPECT_DOUBLE_EQ(op.kinetic_coeff(), 0.5);
    EXPECT_EQ(op.threshold(), 0.0);
}

TEST(Channels, RejectsBadInput)
{
    EXPECT_THROW(assemble_2d_channel(ModelKind::AffAff, params(1.0, 1.0, 0.0, 3), 0, 0, GridSpec1D{},
                                     PotentialSpec::zero(), PotentialSpec::zero()),
                 std::domain_error);
    GridSpec1D bad;
    bad.h = 0.0;
    EXPECT_THROW(assemble_2d_channel(ModelKind::AffAff, params(1.0, 1.0, 0.0), 0, 0, bad, PotentialSpec::zero(),
                                     PotentialSpec::zero()),
                 std::domain_error);
    EXPECT_THROW(assemble_2d_channel(ModelKind::MetAff, params(1.0, 1.0, 0.0), 0, 0, GridSpec1D{},
                                     PotentialSpec::zero(), PotentialSpec::zero()),
                 std::domain_error);
}

TEST(Discretization, GridUsesRoundedSpacing)
{
    EXPECT_EQ(element_count(0.0, 1.0, 0.3), 4);
    EXPECT_EQ(element_count(0.0, 1.0, 0.25), 4);
    GridSpec1D g;
    g.X = 1.0;
    g.h = 0.3;
    const auto op = assemble_2d_channel(ModelKind::AffAff, params(1.0, 1.0, 0.0), 0, 0, g, PotentialSpec::zero(),
                                        PotentialSpec::zero());
    ASSERT_EQ(op.grid().size(), 3u);
    EXPECT_DOUBLE_EQ(op.grid()[0], 0.25);
}

TEST(Discretization, AllChannelsAreSymmetric)
{
    const GridSpec1D g{20.0, 0.05, -5.0, 5.0, 0.05};
    for (ModelKind k : kAllModels)
        for (int m = -4; m <= 4; ++m)
            for (int n = -4; n <= 4; ++n) {
                const auto op = assemble_2d_channel(k, params(2.0, 1.0, 0.3), m, n, g, PotentialSpec::zero(),
                                                    PotentialSpec::harmonic(0.5, 2.0));
                const auto pencil = discretize_weighted(op.x_sector, op.h);
                EXPECT_LT(symmetry_defect(pencil.K, 1), 1e-12);
                EXPECT_LT(symmetry_defect(pencil.M, 2), 1e-12);
                EXPECT_LT(symmetry_defect(symmetrize(op).matrix(), 3), 1e-12);
                if (op.q_sector.profile == Profile::Flat)
                    EXPECT_LT(symmetry_defect(symmetrize(op.q_sector, op.q_h).matrix(), 4), 1e-12);
            }
}

TEST(Discretization, EffectivePotentialMatchesTransformFunction)
{
    // c (w' + w^2) with w = P'/(2P), differentiated numerically.
    for (Profile p : {Profile::Sinh, Profile::Linear}) {
        Sector1D s;
        s.profile = p;
        for (double x : {0.3, 1.0, 4.0}) {
            const double d = 1e-4;
            auto w = [&](double y) {
                const double P = s.weight(y);
                const double dP = (s.weight(y + 1e-6) - s.weight(y - 1e-6)) / 2e-6;
                return dP / (2.0 * P);
            };
            const double wp = (w(x + d) - w(x - d)) / (2.0 * d);
            EXPECT_NEAR(effective_potential(p, 1.3, x), 1.3 * (wp + w(x) * w(x)), 1e-5);
        }
    }
    EXPECT_NEAR(effective_potential(Profile::Sinh, 2.0, 30.0), 0.5, 1e-12);
    EXPECT_EQ(effective_potential(Profile::Flat, 2.0, 1.0), 0.0);
}

TEST(Discretization, FlatSectorSymmetrizationIsTrivial)
{
    Sector1D s;
    s.profile = Profile::Flat;
    s.lo = -1.0;
    s.hi = 1.0;
    s.coeff = 0.7;
    s.potential = PotentialSpec::harmonic(1.0, 0.0);
    const auto f = symmetrize(s, 0.1);
    for (std::size_t i = 0; i < f.nodes.size(); ++i)
        EXPECT_NEAR(f.potential[i], 0.5 * f.nodes[i] * f.nodes[i], 1e-14);
}
