#include "affrigid/text_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace affrigid {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", v);
    return buf;
}

std::string format_label(double v)
{
    char buf[32];
    if (v == std::round(v))
        std::snprintf(buf, sizeof buf, "%d", static_cast<int>(v));
    else
        std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

void write_spectrum_table(std::ostream& os, const std::vector<SpectrumResult>& results, bool planar)
{
    os << "model\t" << (planar ? "m\tn" : "s\tj")
       << "\tsector\teigenindex\tenergy\tthreshold\tbound\tX\th\tnodes\n";
    for (const auto& r : results)
        for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
            const bool has_threshold = !std::isnan(r.threshold);
            os << r.model << '\t' << format_label(r.label1) << '\t' << format_label(r.label2) << '\t'
               << r.sector << '\t' << k << '\t' << format_number(r.eigenvalues[k]) << '\t'
               << format_number(r.threshold) << '\t' << (has_threshold && r.is_bound(k) ? 1 : 0)
               << '\t' << format_number(r.X) << '\t' << format_number(r.h) << '\t'
               << (k < r.node_counts.size() ? std::to_string(r.node_counts[k]) : "-") << '\n';
        }
}

void write_scan_table(std::ostream& os, const std::vector<ScanRow>& rows)
{
    os << "model\tm\tn\tclassification\tground_energy\tthreshold\tbound_count\tX\th\terror\n";
    for (const auto& r : rows)
        os << r.model << '\t' << r.m << '\t' << r.n << '\t' << to_string(r.classification) << '\t'
           << format_number(r.ground) << '\t' << format_number(r.threshold) << '\t'
           << r.bound_count << '\t' << format_number(r.X) << '\t' << format_number(r.h) << '\t'
           << (r.error.empty() ? "-" : r.error) << '\n';
}

void write_convergence_table(std::ostream& os, const ConvergenceStudy& study)
{
    const std::size_t K = study.values.empty() ? 0 : study.values.front().size();
    os << "h";
    for (std::size_t k = 0; k < K; ++k)
        os << "\tE" << k;
    os << '\n';
    for (std::size_t l = 0; l < study.h.size(); ++l) {
        os << format_number(study.h[l]);
        for (double v : study.values[l])
            os << '\t' << format_number(v);
        os << '\n';
    }
    os << "order";
    for (double p : study.observed_order)
        os << '\t' << format_number(p);
    os << "\nextrapolated";
    for (double e : study.extrapolated)
        os << '\t' << format_number(e);
    os << '\n';
}

namespace {

void write_sector(std::ostream& os, const char* name, const Sector1D& s, double h)
{
    os << "sector " << name << " profile " << to_string(s.profile) << " coeff "
       << format_number(s.coeff) << " nu " << format_number(s.nu) << " barrier_coeff "
       << format_number(s.barrier_coeff()) << " ch_coeff " << format_number(s.ch_coeff)
       << " shift " << format_number(s.shift) << " lo " << format_number(s.lo) << " hi "
       << format_number(s.hi) << " h " << format_number(h) << " threshold "
       << format_number(s.threshold()) << " potential " << s.potential.describe() << '\n';
}

} // namespace

void export_descriptor(std::ostream& os, const ChannelOperator1D& op)
{
    os << "# reduced channel operator, x-sector sampled on interior nodes\n";
    os << "model " << to_string(op.kind) << " m " << op.m << " n " << op.n << " I "
       << format_number(op.params.I) << " A " << format_number(op.params.A) << " B "
       << format_number(op.params.B) << " hbar " << format_number(op.params.hbar) << '\n';
    write_sector(os, "x", op.x_sector, op.h);
    write_sector(os, "q", op.q_sector, op.q_h);
    os << "x\tweight\tpotential\n";
    const auto x = op.grid();
    const auto w = op.weight();
    const auto v = op.diag_potential();
    for (std::size_t i = 0; i < x.size(); ++i)
        os << format_number(x[i]) << '\t' << format_number(w[i]) << '\t' << format_number(v[i])
           << '\n';
}

void export_descriptor(std::ostream& os, const NdChannelOperator& op)
{
    os << "# reduced n = 3 channel operator\n";
    os << "model " << to_string(op.kind) << " alpha " << op.alpha.to_string() << " beta "
       << op.beta.to_string() << " I " << format_number(op.params.I) << " A "
       << format_number(op.params.A) << " B " << format_number(op.params.B) << " hbar "
       << format_number(op.params.hbar) << '\n';
    os << "frame " << to_string(op.grid.frame) << " weight "
       << (op.grid.weight == NdWeight::Physical ? "physical" : "flat") << '\n';
    for (int a = 0; a < 3; ++a)
        os << "axis " << format_number(op.grid.lo[a]) << ' ' << format_number(op.grid.hi[a]) << ' '
           << op.grid.count[a] << '\n';
    os << "metric";
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            os << ' ' << format_number(op.metric()(r, c));
    os << "\ncasimir_shift " << format_number(op.casimir_shift()) << "\npair_coeff "
       << format_number(op.pair_coeff()) << '\n';
    for (int k = 0; k < 6; ++k) {
        const auto& O = op.pair_operators()[k];
        os << "pair_operator " << k << ' ' << O.rows();
        for (Eigen::Index r = 0; r < O.rows(); ++r)
            for (Eigen::Index c = 0; c < O.cols(); ++c)
                os << ' ' << format_number(O(r, c).real()) << ' ' << format_number(O(r, c).imag());
        os << '\n';
    }
}

} // namespace affrigid
