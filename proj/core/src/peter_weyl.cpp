#include "affrigid/peter_weyl.hpp"

#include "affrigid/group_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace affrigid {

QGrid::QGrid(std::vector<GridAxis> axes) : axes_(std::move(axes))
{
    if (axes_.empty())
        throw std::domain_error("q-grid needs at least one axis");
    size_ = 1;
    for (const auto& a : axes_) {
        if (a.count < 2 || !(a.hi > a.lo))
            throw std::domain_error("q-grid axis needs count >= 2 and hi > lo");
        size_ *= static_cast<std::size_t>(a.count);
    }
}

std::vector<int> QGrid::multi_index(std::size_t flat) const
{
    std::vector<int> idx(axes_.size());
    for (int d = dim() - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % axes_[d].count);
        flat /= axes_[d].count;
    }
    return idx;
}

std::size_t QGrid::flat_index(const std::vector<int>& idx) const
{
    std::size_t flat = 0;
    for (int d = 0; d < dim(); ++d)
        flat = flat * axes_[d].count + idx[d];
    return flat;
}

Eigen::VectorXd QGrid::point(std::size_t flat) const
{
    const auto idx = multi_index(flat);
    Eigen::VectorXd q(dim());
    for (int d = 0; d < dim(); ++d)
        q(d) = axes_[d].node(idx[d]);
    return q;
}

double QGrid::trapezoid_weight(std::size_t flat) const
{
    const auto idx = multi_index(flat);
    double w = 1.0;
    for (int d = 0; d < dim(); ++d) {
        const bool edge = idx[d] == 0 || idx[d] == axes_[d].count - 1;
        w *= edge ? 0.5 * axes_[d].step() : axes_[d].step();
    }
    return w;
}

std::string to_string(TargetSpace t) { return t == TargetSpace::GLPlus ? "GLplus" : "DoubleCover"; }

TargetSpace parse_target_space(const std::string& text)
{
    if (text == "GLplus" || text == "GLPlus")
        return TargetSpace::GLPlus;
    if (text == "DoubleCover")
        return TargetSpace::DoubleCover;
    throw std::domain_error("unknown target space '" + text + "' (expected GLplus or DoubleCover)");
}

ChannelAmplitude ChannelAmplitude::zeros(const RepLabel& alpha, const RepLabel& beta,
                                         const QGrid& grid, int row, int col)
{
    ChannelAmplitude a;
    a.alpha = alpha;
    a.beta = beta;
    a.row = row;
    a.col = col;
    a.grid = grid;
    a.values.assign(grid.size(), Eigen::MatrixXcd::Zero(alpha.dimension(), beta.dimension()));
    a.validate();
    return a;
}

void ChannelAmplitude::validate() const
{
    if (values.size() != grid.size())
        throw std::domain_error("amplitude has " + std::to_string(values.size())
                                + " samples for a grid of " + std::to_string(grid.size()) + " nodes");
    const int na = alpha.dimension(), nb = beta.dimension();
    for (const auto& m : values)
        if (m.rows() != na || m.cols() != nb)
            throw std::domain_error("amplitude matrix size does not match (2s+1)x(2j+1) for labels "
                                    + alpha.to_string() + ", " + beta.to_string());
    if (row < 0 || row >= na || col < 0 || col >= nb)
        throw std::domain_error("degeneracy index out of range for labels "
                                + alpha.to_string() + ", " + beta.to_string());
}

Eigen::MatrixXcd ChannelAmplitude::interpolate(const Eigen::VectorXd& q) const
{
    const int d = grid.dim();
    if (q.size() != d)
        throw std::domain_error("q-vector dimension does not match the amplitude grid");
    std::vector<int> base(d);
    std::vector<double> t(d);
    for (int a = 0; a < d; ++a) {
        const GridAxis& ax = grid.axes()[a];
        const double slack = 1e-12 * std::max(1.0, std::abs(ax.hi) + std::abs(ax.lo));
        if (!(q(a) >= ax.lo - slack && q(a) <= ax.hi + slack))
            throw std::domain_error("q-vector outside the interpolation range of the grid");
        const double s = (q(a) - ax.lo) / ax.step();
        int i = static_cast<int>(std::floor(s));
        i = std::clamp(i, 0, ax.count - 2);
        base[a] = i;
        t[a] = std::clamp(s - i, 0.0, 1.0);
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(alpha.dimension(), beta.dimension());
    std::vector<int> idx(d);
    for (int corner = 0; corner < (1 << d); ++corner) {
        double w = 1.0;
        for (int a = 0; a < d; ++a) {
            const int bit = (corner >> a) & 1;
            idx[a] = base[a] + bit;
            w *= bit ? t[a] : 1.0 - t[a];
        }
        if (w != 0.0)
            out += w * values[grid.flat_index(idx)];
    }
    return out;
}

cdouble evaluate(const Expansion& e, const RotationVector& L, const Eigen::VectorXd& q,
                 const RotationVector& R)
{
    const RotationVector Rinv(-R.k);
    cdouble sum = 0.0;
    for (const auto& ch : e.channels) {
        const Eigen::MatrixXcd f = ch.interpolate(q);
        const Eigen::MatrixXcd Da = wigner_D(ch.alpha, L);
        const Eigen::MatrixXcd Db = wigner_D(ch.beta, Rinv);
        sum += (Da.row(ch.row) * f * Db.col(ch.col))(0, 0);
    }
    return sum;
}

cdouble evaluate_planar(const Expansion& e, double alpha, const Eigen::VectorXd& q, double beta)
{
    cdouble sum = 0.0;
    for (const auto& ch : e.channels) {
        if (ch.alpha.group() != Group::SO2 || ch.beta.group() != Group::SO2)
            throw std::domain_error("planar evaluation needs SO(2) x SO(2) channels");
        const double phase = ch.alpha.raw() * alpha + ch.beta.raw() * beta;
        sum += ch.interpolate(q)(0, 0) * std::exp(cdouble(0.0, phase));
    }
    return sum;
}

namespace {

const QGrid& common_grid(const Expansion& e1, const Expansion& e2)
{
    const QGrid* g = nullptr;
    for (const Expansion* e : {&e1, &e2})
        for (const auto& ch : e->channels) {
            ch.validate();
            if (!g)
                g = &ch.grid;
            else if (!(ch.grid == *g))
                throw std::domain_error("expansions do not share a common q-grid");
        }
    if (!g)
        throw std::domain_error("scalar product of empty expansions has no grid");
    return *g;
}

} // namespace

cdouble scalar_product(const Expansion& e1, const Expansion& e2)
{
    if (e1.target != e2.target)
        throw std::domain_error("expansions live on different target spaces");
    if (e1.channels.empty() || e2.channels.empty())
        return 0.0;
    const QGrid& grid = common_grid(e1, e2);

    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        w[i] = grid.trapezoid_weight(i) * weight_lambda(grid.point(i)).value;

    cdouble total = 0.0;
    for (const auto& a : e1.channels)
        for (const auto& b : e2.channels) {
            if (a.alpha != b.alpha || a.beta != b.beta || a.row != b.row || a.col != b.col)
                continue;
            cdouble s = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                s += w[i] * (a.values[i].adjoint() * b.values[i]).trace();
            total += s / static_cast<double>(a.alpha.dimension() * a.beta.dimension());
        }
    return total;
}

bool labels_admissible(const RepLabel& alpha, const RepLabel& beta, TargetSpace target,
                       std::string* reason)
{
    auto fail = [&](const std::string& why) {
        if (reason)
            *reason = why;
        return false;
    };
    if (target == TargetSpace::GLPlus) {
        if (!alpha.is_integer() || !beta.is_integer())
            return fail("half-integer label on GLplus");
        return true;
    }
    const bool planar = alpha.group() == Group::SO2 && beta.group() == Group::SO2;
    if (!planar && (alpha.raw() - beta.raw()) % 2 != 0)
        return fail("labels differ in halfness (s - j not an integer)");
    return true;
}

SuperselectionReport validate_superselection(const Expansion& e)
{
    SuperselectionReport rep;
    for (std::size_t i = 0; i < e.channels.size(); ++i) {
        const auto& ch = e.channels[i];
        std::string why;
        if (!labels_admissible(ch.alpha, ch.beta, e.target, &why))
            rep.violations.push_back({i, ch.alpha, ch.beta, why});
    }
    return rep;
}

void require_signed_permutation(const Eigen::MatrixXd& W)
{
    if (W.rows() != W.cols() || W.rows() < 2)
        throw std::domain_error("W must be a square matrix of size n >= 2");
    const Eigen::Index n = W.rows();
    for (Eigen::Index r = 0; r < n; ++r) {
        int nonzero = 0;
        for (Eigen::Index c = 0; c < n; ++c) {
            const double v = W(r, c);
            if (v == 1.0 || v == -1.0)
                ++nonzero;
            else if (v != 0.0)
                throw std::domain_error("W entries must be 0 or +-1");
        }
        if (nonzero != 1)
            throw std::domain_error("W must have exactly one +-1 per row");
    }
    if (!(W.transpose() * W).isIdentity(0.0))
        throw std::domain_error("W must have exactly one +-1 per column");
    if (W.determinant() < 0.0)
        throw std::domain_error("W must have det +1");
}

Eigen::VectorXd permute_invariants(const Eigen::MatrixXd& W, const Eigen::VectorXd& q)
{
    return W.cwiseAbs2() * q;
}

Eigen::MatrixXcd represent_matrix(const RepLabel& label, const Eigen::MatrixXd& W)
{
    if (W.rows() == 2) {
        if (label.group() != Group::SO2)
            throw std::domain_error("planar rotations act through SO(2) labels");
        const double theta = std::atan2(W(1, 0), W(0, 0));
        return wigner_D(label, RotationVector(0.0, 0.0, theta));
    }
    if (W.rows() == 3) {
        if (label.group() == Group::SO2)
            throw std::domain_error("rotations in space act through SO(3)/SU(2) labels");
        return represent(label, Eigen::Matrix3d(W));
    }
    throw std::domain_error("representation matrices are provided for n = 2 and n = 3");
}

std::vector<Eigen::MatrixXd> signed_permutation_group(int n)
{
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Eigen::MatrixXd> out;
    do {
        for (int signs = 0; signs < (1 << n); ++signs) {
            Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
            for (int r = 0; r < n; ++r)
                W(r, perm[r]) = ((signs >> r) & 1) ? -1.0 : 1.0;
            if (W.determinant() > 0.0)
                out.push_back(W);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

double validate_w_symmetry(const ChannelAmplitude& f, const Eigen::MatrixXd& W)
{
    require_signed_permutation(W);
    f.validate();
    const int n = static_cast<int>(W.rows());
    if (f.grid.dim() != n)
        throw std::domain_error("W size does not match the number of deformation invariants");

    // pi_W moves node coordinates between axes; the target axis must carry the same nodes.
    std::vector<int> source(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (W(a, b) != 0.0)
                source[a] = b;
    for (int a = 0; a < n; ++a)
        if (!(f.grid.axes()[a] == f.grid.axes()[source[a]]))
            throw std::domain_error("W permutes invariants between axes with different nodes");

    const Eigen::MatrixXcd Da = represent_matrix(f.alpha, W);
    const Eigen::MatrixXcd DbInv = represent_matrix(f.beta, W).adjoint();
    double defect = 0.0;
    std::vector<int> target(n);
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        const auto idx = f.grid.multi_index(i);
        for (int a = 0; a < n; ++a)
            target[a] = idx[source[a]];
        const Eigen::MatrixXcd lhs = f.values[f.grid.flat_index(target)];
        defect = std::max(defect, (lhs - Da * f.values[i] * DbInv).norm());
    }
    return defect;
}

void export_amplitudes(std::ostream& os, const Expansion& e)
{
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    os << "# affrigid channel amplitudes\n";
    os << "target " << to_string(e.target) << "\n";
    os << "channels " << e.channels.size() << "\n";
    for (const auto& ch : e.channels) {
        ch.validate();
        os << "channel " << ch.alpha.to_string() << " " << ch.beta.to_string() << " " << ch.row
           << " " << ch.col << " dim " << ch.grid.dim() << "\n";
        for (const auto& ax : ch.grid.axes())
            os << "axis " << num(ax.lo) << " " << num(ax.hi) << " " << ax.count << "\n";
        for (std::size_t i = 0; i < ch.grid.size(); ++i) {
            os << "record " << ch.alpha.to_string() << " " << ch.beta.to_string();
            const Eigen::VectorXd q = ch.grid.point(i);
            for (Eigen::Index a = 0; a < q.size(); ++a)
                os << " " << num(q(a));
            const auto& m = ch.values[i];
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                    os << " " << num(m(r, c).real()) << " " << num(m(r, c).imag());
            os << "\n";
        }
    }
}

namespace {

std::string next_content_line(std::istream& is)
{
    std::string line;
    while (std::getline(is, line)) {
        const auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#')
            continue;
        return line;
    }
    throw std::domain_error("unexpected end of amplitude file");
}

std::istringstream expect(std::istream& is, const std::string& keyword)
{
    std::istringstream ls(next_content_line(is));
    std::string kw;
    ls >> kw;
    if (kw != keyword)
        throw std::domain_error("amplitude file: expected '" + keyword + "', found '" + kw + "'");
    return ls;
}

} // namespace

Expansion import_amplitudes(std::istream& is)
{
    Expansion e;
    {
        auto ls = expect(is, "target");
        std::string t;
        ls >> t;
        e.target = parse_target_space(t);
    }
    std::size_t nch = 0;
    expect(is, "channels") >> nch;
    for (std::size_t c = 0; c < nch; ++c) {
        auto ls = expect(is, "channel");
        std::string a, b, dimkw;
        int row = 0, col = 0, dim = 0;
        ls >> a >> b >> row >> col >> dimkw >> dim;
        if (!ls || dimkw != "dim" || dim < 1)
            throw std::domain_error("amplitude file: malformed channel header");
        std::vector<GridAxis> axes(dim);
        for (auto& ax : axes) {
            auto al = expect(is, "axis");
            al >> ax.lo >> ax.hi >> ax.count;
            if (!al)
                throw std::domain_error("amplitude file: malformed axis line");
        }
        ChannelAmplitude ch = ChannelAmplitude::zeros(RepLabel::parse(a), RepLabel::parse(b),
                                                      QGrid(axes), row, col);
        for (std::size_t i = 0; i < ch.grid.size(); ++i) {
            auto rl = expect(is, "record");
            std::string ra, rb;
            rl >> ra >> rb;
            if (ra != a || rb != b)
                throw std::domain_error("amplitude file: record labels do not match their channel");
            for (int d = 0; d < dim; ++d) {
                double qd;
                rl >> qd;
            }
            auto& m = ch.values[i];
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index k = 0; k < m.cols(); ++k) {
                    double re = 0.0, im = 0.0;
                    rl >> re >> im;
                    m(r, k) = cdouble(re, im);
                }
            if (!rl)
                throw std::domain_error("amplitude file: truncated record");
        }
        e.channels.push_back(std::move(ch));
    }
    return e;
}

} // namespace affrigid
