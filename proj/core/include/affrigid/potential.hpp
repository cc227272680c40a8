#pragma once

#include <string>

namespace affrigid {

/// Potential library for V_dil(q) and V_sh(x).
struct PotentialSpec {
    enum class Kind { Zero, Harmonic, FiniteWell };

    Kind kind = Kind::Zero;
    double k = 0.0;      ///< harmonic stiffness, V = (k/2)(x - x0)^2
    double x0 = 0.0;     ///< harmonic centre
    double depth = 0.0;  ///< well depth, V = -depth for |x - centre| <= width/2
    double width = 0.0;
    double centre = 0.0;

    static PotentialSpec zero() { return {}; }
    static PotentialSpec harmonic(double k, double x0);
    static PotentialSpec finite_well(double depth, double width, double centre = 0.0);

    double operator()(double x) const;
    /// Limit as x -> +infinity (harmonic: +inf unless k == 0).
    double at_infinity() const;
    bool is_zero() const { return kind == Kind::Zero; }
    std::string describe() const;
};

} // namespace affrigid
