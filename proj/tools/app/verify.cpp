#include "commands.hpp"

#include "affrigid/affrigid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace affrigid::app {

namespace {

struct Check {
    std::string name;
    double defect = 0.0;
    double tolerance = 0.0;
    bool pass() const { return defect < tolerance; }
};

using Suite = std::vector<Check> (*)(std::uint64_t seed);

RotationVector random_rotation(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, M_PI);
    Eigen::Vector3d axis(g(rng), g(rng), g(rng));
    return RotationVector(axis.normalized() * u(rng));
}

std::vector<Check> algebra(std::uint64_t seed)
{
    const cdouble i1(0.0, 1.0);
    double comm = 0.0, cas = 0.0, unit = 0.0, hom = 0.0;
    std::mt19937_64 rng(seed);
    for (int ts = 0; ts <= 6; ++ts) {
        const auto label = RepLabel::su2(ts);
        const auto g = generators(label);
        const double s = 0.5 * ts;
        const auto I = Eigen::MatrixXcd::Identity(ts + 1, ts + 1);
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            comm = std::max(comm, ((g.S[a] * g.S[b] - g.S[b] * g.S[a]) / i1 - g.S[c]).norm());
        }
        const Eigen::MatrixXcd S2 = g.S[0] * g.S[0] + g.S[1] * g.S[1] + g.S[2] * g.S[2];
        cas = std::max(cas, (S2 - s * (s + 1.0) * I).norm());
        for (int t = 0; t < 8; ++t) {
            const auto ka = random_rotation(rng), kb = random_rotation(rng);
            const Eigen::MatrixXcd Da = wigner_D(label, ka), Db = wigner_D(label, kb);
            unit = std::max(unit, (Da.adjoint() * Da - I).norm());
            if (ts % 2 != 0)
                continue; // half-integer D is a projective representation of SO(3)
            const auto kc = rotation_vector_from_matrix(rotation_matrix(ka) * rotation_matrix(kb));
            hom = std::max(hom, (Da * Db - wigner_D(label, kc)).norm());
        }
    }
    return {{"algebra.commutator[s<=3]", comm, 1e-10},
            {"algebra.casimir[s<=3]", cas, 1e-10},
            {"algebra.unitarity[s<=3]", unit, 1e-10},
            {"algebra.homomorphism[integer s<=3]", hom, 1e-10}};
}

std::vector<Check> measures(std::uint64_t seed)
{
    std::vector<Check> out;
    for (Group g : {Group::SO3, Group::SU2}) {
        double vol = 0.0;
        for (const auto& nd : haar_quadrature(g, 20))
            vol += nd.weight;
        out.push_back({"measures.volume[" + to_string(g) + "]", std::abs(vol / haar_volume(g) - 1.0), 1e-8});
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int n : {2, 3}) {
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            Eigen::MatrixXd phi(n, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    phi(r, c) = gauss(rng);
            if (phi.determinant() < 0.0)
                phi.col(0) *= -1.0;
            worst = std::max(worst, (reconstruct(two_polar_decompose(phi)) - phi).norm() / phi.norm());
        }
        out.push_back({"measures.two_polar_roundtrip[n=" + std::to_string(n) + "]", worst, 1e-12});
    }
    return out;
}

std::vector<Check> orthogonality(std::uint64_t)
{
    std::vector<Check> out;
    for (Group g : {Group::SO3, Group::SU2}) {
        const auto nodes = haar_quadrature(g, 20);
        std::vector<int> spins;
        for (int ts = 0; ts <= 4; ts += g == Group::SU2 ? 1 : 2)
            spins.push_back(ts);
        std::vector<std::vector<Eigen::VectorXcd>> flat(spins.size());
        for (std::size_t a = 0; a < spins.size(); ++a)
            for (const auto& nd : nodes) {
                const Eigen::MatrixXcd D = wigner_D(RepLabel::su2(spins[a]), nd.k);
                flat[a].push_back(Eigen::Map<const Eigen::VectorXcd>(D.data(), D.size()));
            }
        double worst = 0.0;
        for (std::size_t a = 0; a < spins.size(); ++a)
            for (std::size_t b = 0; b < spins.size(); ++b) {
                Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(flat[a][0].size(), flat[b][0].size());
                for (std::size_t i = 0; i < nodes.size(); ++i)
                    acc += nodes[i].weight * flat[a][i].conjugate() * flat[b][i].transpose();
                if (a == b)
                    acc.diagonal().array() -= haar_volume(g) / (spins[a] + 1);
                worst = std::max(worst, acc.cwiseAbs().maxCoeff() / haar_volume(g));
            }
        out.push_back({"orthogonality.wigner_D[" + to_string(g) + ", s<=2]", worst, 1e-8});
    }
    return out;
}

std::vector<Check> spectral_equivalence(std::uint64_t seed)
{
    struct Case {
        ModelKind kind;
        double I, A;
        int m, n;
    };
    const Case cases[] = {{ModelKind::AffAff, 1.0, 1.0, 0, 0},
                          {ModelKind::AffAff, 1.0, 1.0, 2, 2},
                          {ModelKind::AffAff, 1.0, 1.0, 2, -2},
                          {ModelKind::MetAff, 2.0, 1.0, 2, 1}};
    double gap = 0.0, herm = 0.0;
    for (const auto& c : cases) {
        ModelParams p;
        p.I = c.I;
        p.A = c.A;
        const auto op = assemble_2d_channel(c.kind, p, c.m, c.n, GridSpec1D{}, {}, {});
        std::vector<std::vector<double>> w, s;
        for (double h : {0.04, 0.02, 0.01}) {
            w.push_back(sector_eigenvalues(op.x_sector, h, 5, Form::Weighted));
            s.push_back(sector_eigenvalues(op.x_sector, h, 5, Form::Symmetrized));
        }
        const double thr = op.threshold();
        for (int k = 0; k < 5; ++k) {
            const double ew = richardson2(w[1][k], w[2][k]), es = richardson2(s[1][k], s[2][k]);
            const double scale = std::max(std::abs(ew), std::isfinite(thr) ? std::abs(thr) : 0.0);
            gap = std::max(gap, std::abs(ew - es) / scale);
        }
        const auto pencil = discretize_weighted(op.x_sector, op.h);
        herm = std::max({herm, symmetry_defect(pencil.K, seed), symmetry_defect(pencil.M, seed + 1),
                         symmetry_defect(symmetrize(op).matrix(), seed + 2)});
    }
    return {{"spectral-equivalence.forms[extrapolated relative gap]", gap, 1e-6},
            {"spectral-equivalence.hermiticity", herm, 1e-10}};
}

const std::vector<std::pair<std::string, Suite>>& registry()
{
    static const std::vector<std::pair<std::string, Suite>> r = {
        {"algebra", algebra},
        {"measures", measures},
        {"orthogonality", orthogonality},
        {"spectral-equivalence", spectral_equivalence},
    };
    return r;
}

} // namespace

const std::vector<std::string>& verify_suites()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, _] : registry())
            v.push_back(name);
        v.push_back("all");
        return v;
    }();
    return names;
}

int command_verify(const std::string& suite, std::uint64_t seed, const Context& ctx)
{
    int failed = 0, total = 0;
    bool matched = false;
    for (const auto& [name, run] : registry()) {
        if (suite != "all" && suite != name)
            continue;
        matched = true;
        for (const auto& c : run(seed)) {
            char line[256];
            std::snprintf(line, sizeof line, "%s %s defect %.3e tolerance %.1e\n", c.pass() ? "PASS" : "FAIL",
                          c.name.c_str(), c.defect, c.tolerance);
            *ctx.out << line;
            ++total;
            if (!c.pass())
                ++failed;
        }
    }
    if (!matched)
        throw UsageError("suite: unknown suite '" + suite + "'");
    *ctx.out << total - failed << " of " << total << " checks passed\n";
    return failed == 0 ? kOk : kPartial;
}

} // namespace affrigid::app
