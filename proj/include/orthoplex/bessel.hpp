#pragma once

#include "orthoplex/core_model.hpp"
#include "orthoplex/interaction.hpp"

namespace orthoplex {

/// Angular extension of the limiting entropy,
/// s(m, rho, th1, th2) = 1 + ln((sqrt((rho+m)/2) cos th1 + sqrt((rho-m)/2) cos th2)^2).
/// Reduces to the plain limiting entropy at th1 = th2 = 0.
double angular_entropy(double m, double rho, double theta1, double theta2);

/// Overloaded tilting function psi^g(m, th1, th2) = g(m) + s(m, 1, th1, th2).
double angular_psi(const Interaction& g, double m, double theta1, double theta2);

/// ln Z_n via the modified-Bessel integral representation
///   Z_n = 2^{2n-1} n^{n-2} n! C(2n,2) / ((2n)! sqrt(rho^2-m^2) pi^2)
///         * int_0^pi int_0^pi cos th1 cos th2 (A cos th1 + B cos th2)^{2n-2}
/// evaluated by tensor Gauss-Legendre panels, dyadically refined toward the
/// (0, 0) peak.  Sign changes are handled by factoring out the peak value and
/// integrating the bounded shifted integrand in linear space.
/// Independent of the k-sum route in core_model.
LogReal log_partition_bessel(int n, const ModelPoint& point);

/// Log of the Laplace normalization factor
///   n^{1/(2k)+1} (2n)! pi^2 / (2^{2n-1} n^{n-2} n! C(2n,2) e^{-(n-1)}).
LogReal laplace_log_prefactor(int n, int k);

/// Finite-n Laplace weight W_n^g(m*, delta): the prefactor times
/// int_{m*-delta}^{m*+delta} e^{n(g + s_n)} dm / e^{n psi^g(m*)}.
/// Converges to weight_w as n grows.  The window must contain exactly one
/// global maximizer.
double laplace_weight_numeric(const Interaction& g, double m_star, double delta, int n);

}  // namespace orthoplex
