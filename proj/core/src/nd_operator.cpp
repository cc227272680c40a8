#include "affrigid/nd_operator.hpp"

#include "affrigid/errors.hpp"
#include "affrigid/group_geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace affrigid {

std::string to_string(NdFrame f) { return f == NdFrame::Cartesian ? "cartesian" : "shear"; }

NdFrame parse_nd_frame(const std::string& text)
{
    if (text == "cartesian")
        return NdFrame::Cartesian;
    if (text == "shear")
        return NdFrame::Shear;
    throw std::domain_error("unknown frame '" + text + "' (cartesian or shear)");
}

namespace {

constexpr int kPairs = 3;
// pair (a, b) and the generator index c completing it
constexpr int kPairA[kPairs] = {0, 1, 0};
constexpr int kPairB[kPairs] = {1, 2, 2};
constexpr int kPairC[kPairs] = {2, 0, 1};

Eigen::Matrix3d frame_matrix(NdFrame f)
{
    Eigen::Matrix3d T = Eigen::Matrix3d::Identity();
    if (f == NdFrame::Shear)
        T << 1.0, 2.0 / 3.0, 1.0 / 3.0,
             1.0, -1.0 / 3.0, 1.0 / 3.0,
             1.0, -1.0 / 3.0, -2.0 / 3.0;
    return T;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

void check_label(const RepLabel& l, const NdLimits& limits)
{
    if (l.group() == Group::SO2)
        throw std::domain_error("n = 3 channels need SO(3) or SU(2) labels");
    if (l.twice_spin() > limits.max_twice_spin)
        throw CapacityError("label " + l.to_string() + " exceeds the configured maximum spin "
                            + std::to_string(0.5 * limits.max_twice_spin));
}

} // namespace

Eigen::Vector3d NdChannelOperator::node_point(int i) const
{
    const int n1 = grid.count[1], n2 = grid.count[2];
    const int idx[3] = {i / (n1 * n2), (i / n2) % n1, i % n2};
    Eigen::Vector3d xi;
    for (int a = 0; a < 3; ++a)
        xi(a) = grid.lo[a] + (idx[a] + 1) * h_[a];
    return frame_ * xi;
}

Eigen::VectorXcd NdChannelOperator::apply(const Eigen::VectorXcd& f) const
{
    if (f.size() != dofs())
        throw std::domain_error("amplitude vector has the wrong number of unknowns");
    const int d = components();
    Eigen::Map<const Eigen::MatrixXcd> F(f.data(), nodes_, d);
    Eigen::VectorXcd out(dofs());
    Eigen::Map<Eigen::MatrixXcd> G(out.data(), nodes_, d);
    G.noalias() = k0_ * F;
    for (int k = 0; k < 2 * kPairs; ++k)
        if (pair_active_[k])
            G.noalias() += (pair_[k] * F) * pair_ops_[k].transpose();
    return out;
}

Eigen::VectorXcd NdChannelOperator::apply_mass(const Eigen::VectorXcd& f) const
{
    if (f.size() != dofs())
        throw std::domain_error("amplitude vector has the wrong number of unknowns");
    Eigen::Map<const Eigen::MatrixXcd> F(f.data(), nodes_, components());
    Eigen::VectorXcd out(dofs());
    Eigen::Map<Eigen::MatrixXcd>(out.data(), nodes_, components()).noalias() = mass_c_ * F;
    return out;
}

Eigen::VectorXcd NdChannelOperator::solve_mass(const Eigen::VectorXcd& f) const
{
    if (f.size() != dofs())
        throw std::domain_error("amplitude vector has the wrong number of unknowns");
    Eigen::Map<const Eigen::MatrixXcd> F(f.data(), nodes_, components());
    const Eigen::MatrixXd re = mass_solver_->solve(Eigen::MatrixXd(F.real()));
    const Eigen::MatrixXd im = mass_solver_->solve(Eigen::MatrixXd(F.imag()));
    Eigen::VectorXcd out(dofs());
    Eigen::Map<Eigen::MatrixXcd> G(out.data(), nodes_, components());
    G.real() = re;
    G.imag() = im;
    return out;
}

cdouble NdChannelOperator::inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const
{
    return f.dot(apply_mass(g));
}

NdChannelOperator assemble_nd_channel(ModelKind kind, const ModelParams& params,
                                      const RepLabel& alpha, const RepLabel& beta,
                                      const NdGridSpec& grid, const PotentialSpec& v_dil,
                                      const NdLimits& limits)
{
    if (params.n != 3)
        throw std::domain_error("matrix-valued channels are implemented for n = 3");
    check_gates(kind, params);
    check_label(alpha, limits);
    check_label(beta, limits);
    for (int a = 0; a < 3; ++a) {
        if (grid.count[a] < 1)
            throw std::domain_error("each axis needs at least one interior node");
        if (!(grid.hi[a] > grid.lo[a]))
            throw std::domain_error("box needs hi > lo on every axis");
    }

    NdChannelOperator op;
    op.kind = kind;
    op.params = params;
    op.alpha = alpha;
    op.beta = beta;
    op.grid = grid;
    const int n0 = grid.count[0], n1 = grid.count[1], n2 = grid.count[2];
    const std::size_t nodes = static_cast<std::size_t>(n0) * n1 * n2;
    const std::size_t dofs = nodes * alpha.dimension() * beta.dimension();
    if (dofs > limits.max_dofs)
        throw CapacityError("n = 3 channel needs " + std::to_string(dofs)
                            + " unknowns, above the limit " + std::to_string(limits.max_dofs));
    // nine sparse matrices with at most 27 entries per row, plus the mass factor
    const std::size_t bytes = nodes * 27 * (9 * 20 + 12) + dofs * 16 * 8;
    if (bytes > limits.max_bytes)
        throw CapacityError("n = 3 channel needs about " + std::to_string(bytes >> 20)
                            + " MiB, above the memory budget");
    op.nodes_ = static_cast<int>(nodes);
    for (int a = 0; a < 3; ++a)
        op.h_[a] = (grid.hi[a] - grid.lo[a]) / (grid.count[a] + 1);
    op.frame_ = frame_matrix(grid.frame);

    const bool dalembert = kind == ModelKind::DAlembert;
    const bool physical = grid.weight == NdWeight::Physical;
    if (dalembert) {
        for (int corner = 0; corner < 8; ++corner) {
            Eigen::Vector3d xi;
            for (int a = 0; a < 3; ++a)
                xi(a) = ((corner >> a) & 1) ? grid.hi[a] : grid.lo[a];
            if ((op.frame_ * xi).minCoeff() <= 0.0)
                throw std::domain_error("d'Alembert box must keep every Q^a > 0");
        }
    }

    // kinetic tensor and constant terms
    const DerivedConstants dc = derived_constants(params);
    const double hb2 = params.hbar * params.hbar;
    double kD = 0.0, kq = 0.0;
    switch (kind) {
    case ModelKind::AffAff:
        kD = hb2 / (2.0 * params.A);
        kq = -hb2 * params.B / (2.0 * params.A * (params.A + 3.0 * params.B));
        op.pair_coeff_ = 2.0 / (32.0 * params.A);
        break;
    case ModelKind::MetAff:
    case ModelKind::AffMet: {
        kD = hb2 / (2.0 * dc.alpha);
        kq = 0.5 * hb2 * dc.inv_beta;
        op.pair_coeff_ = 2.0 / (32.0 * dc.alpha);
        const double sp = kind == ModelKind::MetAff ? alpha.spin() : beta.spin();
        op.casimir_shift_ = hb2 * sp * (sp + 1.0) * 0.5 * dc.inv_mu;
        break;
    }
    case ModelKind::DAlembert:
        kD = hb2 / (2.0 * params.I);
        op.pair_coeff_ = 2.0 / (8.0 * params.I);
        break;
    }
    op.metric_ = kD * Eigen::Matrix3d::Identity() + kq * Eigen::Matrix3d::Ones();
    const Eigen::Matrix3d Tinv = op.frame_.inverse();
    const Eigen::Matrix3d Gxi = Tinv * op.metric_ * Tinv.transpose();
    const double jac = std::abs(op.frame_.determinant());

    // generator combinations on vec(f), column-major
    const GeneratorSet Sa = generators(alpha, params.hbar);
    const GeneratorSet Sb = generators(beta, params.hbar);
    const Eigen::MatrixXcd Ia = Eigen::MatrixXcd::Identity(alpha.dimension(), alpha.dimension());
    const Eigen::MatrixXcd Ib = Eigen::MatrixXcd::Identity(beta.dimension(), beta.dimension());
    for (int p = 0; p < kPairs; ++p) {
        const int c = kPairC[p];
        const Eigen::MatrixXcd L = kron(Ib, Sa.S[c]);
        const Eigen::MatrixXcd R = kron(Sb.S[c].transpose(), Ia);
        const Eigen::MatrixXcd minus = R - L, plus = R + L;
        op.pair_ops_[2 * p] = op.pair_coeff_ * minus * minus;
        op.pair_ops_[2 * p + 1] = op.pair_coeff_ * plus * plus;
        op.pair_active_[2 * p] = op.pair_ops_[2 * p].norm() > 0.0;
        op.pair_active_[2 * p + 1] = op.pair_ops_[2 * p + 1].norm() > 0.0;
    }

    // element loop, 3-point Gauss per axis
    const double g0 = 0.5 - 0.5 * std::sqrt(0.6), g2 = 0.5 + 0.5 * std::sqrt(0.6);
    const double gx[3] = {g0, 0.5, g2};
    const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    const double vol = op.h_[0] * op.h_[1] * op.h_[2] * jac;

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> tk, tm;
    std::array<std::vector<Trip>, 6> tp;
    const std::size_t est = static_cast<std::size_t>(n0 + 1) * (n1 + 1) * (n2 + 1) * 64;
    tk.reserve(est);
    tm.reserve(est);

    double Ke[8][8], Me[8][8], Pe[6][8][8];
    for (int ei = 0; ei <= n0; ++ei)
        for (int ej = 0; ej <= n1; ++ej)
            for (int ek = 0; ek <= n2; ++ek) {
                int gidx[8];
                bool any = false;
                for (int c = 0; c < 8; ++c) {
                    const int i = ei - 1 + (c & 1), j = ej - 1 + ((c >> 1) & 1),
                              k = ek - 1 + ((c >> 2) & 1);
                    const bool inside = i >= 0 && i < n0 && j >= 0 && j < n1 && k >= 0 && k < n2;
                    gidx[c] = inside ? (i * n1 + j) * n2 + k : -1;
                    any = any || inside;
                }
                if (!any)
                    continue;
                std::fill(&Ke[0][0], &Ke[0][0] + 64, 0.0);
                std::fill(&Me[0][0], &Me[0][0] + 64, 0.0);
                std::fill(&Pe[0][0][0], &Pe[0][0][0] + 6 * 64, 0.0);

                for (int qa = 0; qa < 3; ++qa)
                    for (int qb = 0; qb < 3; ++qb)
                        for (int qc = 0; qc < 3; ++qc) {
                            const double t[3] = {gx[qa], gx[qb], gx[qc]};
                            const double wq = gw[qa] * gw[qb] * gw[qc] * vol;
                            Eigen::Vector3d xi(grid.lo[0] + (ei + t[0]) * op.h_[0],
                                               grid.lo[1] + (ej + t[1]) * op.h_[1],
                                               grid.lo[2] + (ek + t[2]) * op.h_[2]);
                            const Eigen::Vector3d z = op.frame_ * xi;

                            double P = 1.0;
                            if (physical)
                                P = dalembert ? weight_l(z).value : weight_lambda(z).value;
                            const double vs = v_dil(z.mean()) + op.casimir_shift_;
                            double gpair[6];
                            for (int p = 0; p < kPairs; ++p) {
                                const double za = z(kPairA[p]), zb = z(kPairB[p]);
                                if (dalembert) {
                                    gpair[2 * p] = 1.0 / ((za - zb) * (za - zb));
                                    gpair[2 * p + 1] = 1.0 / ((za + zb) * (za + zb));
                                } else {
                                    const double sh = std::sinh(0.5 * (za - zb));
                                    const double ch = std::cosh(0.5 * (za - zb));
                                    gpair[2 * p] = 1.0 / (sh * sh);
                                    gpair[2 * p + 1] = -1.0 / (ch * ch);
                                }
                            }

                            double N[8];
                            Eigen::Vector3d dN[8];
                            for (int c = 0; c < 8; ++c) {
                                double f[3], df[3];
                                for (int a = 0; a < 3; ++a) {
                                    const bool up = (c >> a) & 1;
                                    f[a] = up ? t[a] : 1.0 - t[a];
                                    df[a] = (up ? 1.0 : -1.0) / op.h_[a];
                                }
                                N[c] = f[0] * f[1] * f[2];
                                dN[c] = Eigen::Vector3d(df[0] * f[1] * f[2], f[0] * df[1] * f[2],
                                                        f[0] * f[1] * df[2]);
                            }
                            const double wp = wq * P;
                            for (int a = 0; a < 8; ++a) {
                                if (gidx[a] < 0)
                                    continue;
                                const Eigen::Vector3d GdN = Gxi * dN[a];
                                for (int b = 0; b < 8; ++b) {
                                    if (gidx[b] < 0)
                                        continue;
                                    const double nn = N[a] * N[b];
                                    Ke[a][b] += wp * (GdN.dot(dN[b]) + vs * nn);
                                    Me[a][b] += wp * nn;
                                    for (int k = 0; k < 6; ++k)
                                        Pe[k][a][b] += wp * gpair[k] * nn;
                                }
                            }
                        }
                for (int a = 0; a < 8; ++a) {
                    if (gidx[a] < 0)
                        continue;
                    for (int b = 0; b < 8; ++b) {
                        if (gidx[b] < 0)
                            continue;
                        tk.emplace_back(gidx[a], gidx[b], Ke[a][b]);
                        tm.emplace_back(gidx[a], gidx[b], Me[a][b]);
                        for (int k = 0; k < 6; ++k)
                            if (op.pair_active_[k])
                                tp[k].emplace_back(gidx[a], gidx[b], Pe[k][a][b]);
                    }
                }
            }

    const int nn = op.nodes_;
    NdChannelOperator::SparseR K0(nn, nn), M(nn, nn);
    K0.setFromTriplets(tk.begin(), tk.end());
    M.setFromTriplets(tm.begin(), tm.end());
    op.k0_ = K0.cast<cdouble>();
    op.mass_ = M;
    op.mass_c_ = M.cast<cdouble>();
    for (int k = 0; k < 6; ++k) {
        NdChannelOperator::SparseR Pk(nn, nn);
        if (op.pair_active_[k])
            Pk.setFromTriplets(tp[k].begin(), tp[k].end());
        op.pair_[k] = Pk.cast<cdouble>();
    }
    op.mass_solver_ = std::make_shared<Eigen::SimplicialLDLT<NdChannelOperator::SparseR>>(M);
    if (op.mass_solver_->info() != Eigen::Success)
        throw NumericalError("Galerkin mass matrix is not positive definite");
    return op;
}

double symmetry_defect(const NdChannelOperator& op, std::uint64_t seed, int trials)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXcd u(op.dofs()), v(op.dofs());
        for (Eigen::Index i = 0; i < op.dofs(); ++i) {
            u(i) = cdouble(dist(rng), dist(rng));
            v(i) = cdouble(dist(rng), dist(rng));
        }
        // <u, A v>_M = u^H K v and <A u, v>_M = (K u)^H v for A = M^{-1} K
        const Eigen::VectorXcd Ku = op.apply(u), Kv = op.apply(v);
        const cdouble a = u.dot(Kv), b = Ku.dot(v);
        const double scale = u.norm() * Kv.norm() + v.norm() * Ku.norm();
        worst = std::max(worst, scale > 0.0 ? std::abs(a - b) / scale : std::abs(a - b));
    }
    return worst;
}

} // namespace affrigid
