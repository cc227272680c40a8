#pragma once

#include "affrigid/channel2d.hpp"
#include "affrigid/nd_operator.hpp"
#include "affrigid/spectra.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace affrigid {

/// 15 significant digits in scientific notation; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

/// Integers as "3", half-integers as "1.5".
std::string format_label(double v);

/// Tab-separated spectrum table; planar tables name the label columns m, n, others s, j.
void write_spectrum_table(std::ostream& os, const std::vector<SpectrumResult>& results,
                          bool planar);

struct ScanRow {
    std::string model;
    int m = 0;
    int n = 0;
    ChannelClass classification = ChannelClass::Marginal;
    double ground = 0.0;
    double threshold = 0.0;
    int bound_count = 0;
    double X = 0.0;
    double h = 0.0;
    std::string error;
};

void write_scan_table(std::ostream& os, const std::vector<ScanRow>& rows);

void write_convergence_table(std::ostream& os, const ConvergenceStudy& study);

/// Grid, weight, diagonal potential and coefficients of the x-sector and the q-sector.
void export_descriptor(std::ostream& os, const ChannelOperator1D& op);

/// Metric, coefficients, generator combinations and grid of an n = 3 channel.
void export_descriptor(std::ostream& os, const NdChannelOperator& op);

} // namespace affrigid
