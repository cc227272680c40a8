#pragma once

#include <string>

namespace affrigid {

enum class ModelKind { AffAff, MetAff, AffMet, DAlembert };

std::string to_string(ModelKind k);
ModelKind parse_model_kind(const std::string& text);

struct ModelParams {
    double I = 1.0;
    double A = 1.0;
    double B = 0.0;
    double hbar = 1.0;
    int n = 2;
};

/**
 * alpha = I + A, beta = -(I+A)(I+A+nB)/B, mu = (I^2 - A^2)/I, beta_tilde = n(I+A+nB).
 * A vanishing B leaves 1/beta = 0 (beta infinite); I = 0 leaves mu undefined and
 * I = +-A leaves 1/mu undefined. Consumers read the reciprocals.
 */
struct DerivedConstants {
    double alpha = 0.0;
    double beta = 0.0;
    double mu = 0.0;
    double beta_tilde = 0.0;
    double inv_beta = 0.0;
    double inv_mu = 0.0;
    bool mu_defined = true;     ///< I != 0
    bool mu_degenerate = false; ///< I^2 == A^2, so 1/mu does not exist
};

DerivedConstants derived_constants(const ModelParams& p);

/// Throws std::domain_error naming the first violated inequality.
void check_gates(ModelKind kind, const ModelParams& p);

/**
 * Constant-coefficient read-off of the Casimir form of the kinetic energy:
 * C2/(2A) - B p2 / (2A(A+nB)) for AffAff and C2/(2 alpha) + p2/(2 beta) + spin2/(2 mu)
 * for MetAff/AffMet (spin2 is |S|^2 resp. |V|^2); d'Alembert is not of this form.
 */
double kinetic_from_casimirs(ModelKind kind, const ModelParams& p, double casimir2, double p2,
                             double spin2);

} // namespace affrigid
