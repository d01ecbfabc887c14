#pragma once

#include "orthoplex/core_model.hpp"

namespace orthoplex {

/// Grand-canonical conjugate fields; the admissible domain is mu > |beta|.
struct FieldParams {
    double beta = 0.0;
    double mu = 1.0;
};

bool in_field_domain(const FieldParams& params);

/// q(beta, mu) = 1/(mu+beta) + 1/(mu-beta) on the admissible domain.
double single_site_normalizer(const FieldParams& params);

/// f(beta, mu) = ln q(beta, mu); +infinity off the admissible domain.
double grand_entropy(double beta, double mu);
inline double grand_entropy(const FieldParams& p) { return grand_entropy(p.beta, p.mu); }

/// Limiting microcanonical entropy
/// s(m, rho) = 1 + ln((sqrt((rho+m)/2) + sqrt((rho-m)/2))^2), interior only.
double limiting_entropy(const ModelPoint& point);

/// The rho = 1 slice extended continuously to the endpoints, s(+-1, 1) = 1.
/// Kept separate from limiting_entropy: the continuous extension exists only
/// along this slice.
double limiting_entropy_slice(double m);

/// The parameter bijection (m, rho) -> (beta, mu):
/// beta = (1/m)(1 - rho/sqrt(rho^2-m^2)), mu = 1/sqrt(rho^2-m^2),
/// with the removable singularity at m = 0 handled by series.
FieldParams ensemble_map(const ModelPoint& point);

/// Inverse bijection (beta, mu) -> (m, rho) = -grad f.
ModelPoint inverse_map(const FieldParams& params);

/// inf over the admissible domain of {beta m + mu rho + f(beta, mu)},
/// computed by coordinate descent seeded at ensemble_map(point) plus one
/// deterministic pseudo-random restart.  Agrees with limiting_entropy to
/// better than 1e-6; throws std::runtime_error on non-convergence.
double legendre_inf_numeric(const ModelPoint& point);

struct HalfConstrainedResult {
    double value = 0.0;
    double argmax = 0.0;
};

/// sup over [-1, 1] of {s(m, 1) - beta m} and its maximizer.
HalfConstrainedResult half_constrained_entropy(double beta);

}  // namespace orthoplex
