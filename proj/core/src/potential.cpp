#include "affrigid/potential.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace affrigid {

PotentialSpec PotentialSpec::harmonic(double k, double x0)
{
    if (!std::isfinite(k) || !std::isfinite(x0))
        throw std::domain_error("harmonic potential parameters must be finite");
    PotentialSpec s;
    s.kind = Kind::Harmonic;
    s.k = k;
    s.x0 = x0;
    return s;
}

PotentialSpec PotentialSpec::finite_well(double depth, double width, double centre)
{
    if (!(width >= 0.0))
        throw std::domain_error("finite well width must be non-negative");
    if (!std::isfinite(depth) || !std::isfinite(centre))
        throw std::domain_error("finite well parameters must be finite");
    PotentialSpec s;
    s.kind = Kind::FiniteWell;
    s.depth = depth;
    s.width = width;
    s.centre = centre;
    return s;
}

double PotentialSpec::operator()(double x) const
{
    switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Harmonic: return 0.5 * k * (x - x0) * (x - x0);
    case Kind::FiniteWell: return std::abs(x - centre) <= 0.5 * width ? -depth : 0.0;
    }
    return 0.0;
}

double PotentialSpec::at_infinity() const
{
    if (kind == Kind::Harmonic && k != 0.0)
        return k > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    return 0.0;
}

std::string PotentialSpec::describe() const
{
    char buf[160];
    switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Harmonic:
        std::snprintf(buf, sizeof buf, "harmonic(k=%.17g, x0=%.17g)", k, x0);
        return buf;
    case Kind::FiniteWell:
        std::snprintf(buf, sizeof buf, "finite_well(depth=%.17g, width=%.17g, centre=%.17g)", depth,
                      width, centre);
        return buf;
    }
    return "?";
}

} // namespace affrigid
