#include "affrigid/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace affrigid {

std::string to_string(ModelKind k)
{
    switch (k) {
    case ModelKind::AffAff: return "AffAff";
    case ModelKind::MetAff: return "MetAff";
    case ModelKind::AffMet: return "AffMet";
    case ModelKind::DAlembert: return "DAlembert";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& text)
{
    if (text == "AffAff" || text == "aff-aff")
        return ModelKind::AffAff;
    if (text == "MetAff" || text == "met-aff")
        return ModelKind::MetAff;
    if (text == "AffMet" || text == "aff-met")
        return ModelKind::AffMet;
    if (text == "DAlembert" || text == "dalembert")
        return ModelKind::DAlembert;
    throw std::domain_error("unknown model '" + text + "' (AffAff, MetAff, AffMet, DAlembert)");
}

DerivedConstants derived_constants(const ModelParams& p)
{
    if (!std::isfinite(p.I) || !std::isfinite(p.A) || !std::isfinite(p.B))
        throw std::domain_error("inertial constants must be finite");
    const double inf = std::numeric_limits<double>::infinity();
    const double n = p.n;
    DerivedConstants d;
    d.alpha = p.I + p.A;
    d.beta_tilde = n * (p.I + p.A + n * p.B);
    if (p.B == 0.0) {
        d.beta = inf;
        d.inv_beta = 0.0;
    } else {
        d.beta = -(p.I + p.A) * (p.I + p.A + n * p.B) / p.B;
        d.inv_beta = 1.0 / d.beta;
    }
    if (p.I == 0.0) {
        d.mu_defined = false;
        d.mu = std::numeric_limits<double>::quiet_NaN();
        d.inv_mu = std::numeric_limits<double>::quiet_NaN();
    } else {
        d.mu = (p.I * p.I - p.A * p.A) / p.I;
        d.mu_degenerate = d.mu == 0.0;
        d.inv_mu = d.mu_degenerate ? std::numeric_limits<double>::quiet_NaN() : 1.0 / d.mu;
    }
    return d;
}

void check_gates(ModelKind kind, const ModelParams& p)
{
    if (p.n != 2 && p.n != 3)
        throw std::domain_error("dimension n must be 2 or 3");
    if (!(p.hbar > 0.0))
        throw std::domain_error("gate violated: hbar > 0");
    const DerivedConstants d = derived_constants(p);
    switch (kind) {
    case ModelKind::AffAff:
        if (!(p.A > 0.0))
            throw std::domain_error("gate violated: A > 0");
        if (!(p.A + p.n * p.B > 0.0))
            throw std::domain_error("gate violated: A + nB > 0");
        return;
    case ModelKind::MetAff:
    case ModelKind::AffMet:
        if (!(d.alpha > 0.0))
            throw std::domain_error("gate violated: alpha = I + A > 0");
        if (!(d.beta_tilde > 0.0))
            throw std::domain_error("gate violated: beta_tilde = n(I + A + nB) > 0");
        if (!d.mu_defined)
            throw std::domain_error("gate violated: mu = (I^2 - A^2)/I needs I != 0");
        if (d.mu_degenerate)
            throw std::domain_error("gate violated: mu != 0 (I^2 = A^2 makes 1/mu undefined)");
        return;
    case ModelKind::DAlembert:
        if (!(p.I > 0.0))
            throw std::domain_error("gate violated: I > 0");
        return;
    }
}

double kinetic_from_casimirs(ModelKind kind, const ModelParams& p, double casimir2, double p2,
                             double spin2)
{
    check_gates(kind, p);
    const DerivedConstants d = derived_constants(p);
    switch (kind) {
    case ModelKind::AffAff:
        return casimir2 / (2.0 * p.A) - p.B / (2.0 * p.A * (p.A + p.n * p.B)) * p2;
    case ModelKind::MetAff:
    case ModelKind::AffMet:
        return casimir2 / (2.0 * d.alpha) + 0.5 * d.inv_beta * p2 + 0.5 * d.inv_mu * spin2;
    case ModelKind::DAlembert:
        break;
    }
    throw std::domain_error("the d'Alembert kinetic energy has no Casimir form");
}

} // namespace affrigid
