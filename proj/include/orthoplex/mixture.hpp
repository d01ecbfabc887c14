#pragma once

#include <memory>
#include <vector>

#include "orthoplex/core_model.hpp"
#include "orthoplex/interaction.hpp"
#include "orthoplex/sampling.hpp"

namespace orthoplex {

/// The finite-volume magnetization mixture kappa_n^g: interior density
/// n e^{n g(m)} Z_n(m n, n) on (-1, 1) plus the two boundary atoms
/// n e^{n g(+-1)} Z_n(+-n, n).  All masses live in the log domain; the
/// normalizer reaches exp(n sup psi) scales.
class FiniteMixture {
public:
    FiniteMixture(const Interaction& g, int n, double log_tol = 1e-11);

    int size() const { return n_; }
    double log_normalizer() const { return log_q_; }

    /// ln kappa_n^g([a, b]); includes a boundary atom when the interval
    /// covers the corresponding endpoint.
    double log_mass(double a, double b) const;

    /// Unnormalized log mass of the atom at m = +1 or m = -1.
    double log_atom(bool positive) const { return positive ? log_atom_pos_ : log_atom_neg_; }

private:
    double log_interior(double a, double b) const;

    Interaction g_;
    int n_;
    double log_tol_;
    std::shared_ptr<const PartitionEvaluator> pe_;
    std::vector<double> breakpoints_;
    double log_atom_pos_, log_atom_neg_, log_q_;
};

/// Expectation of a bounded observable (arity <= 4) under the limiting
/// mixture of grand-canonical product states, by tensorized Gauss-Laguerre
/// quadrature of the two-sided exponential single-site density.
double limit_state_expectation(const MixtureState& mix, const Observable& obs);

/// Expectation under a single grand-canonical product state.
double grand_canonical_expectation(const FieldParams& params, const Observable& obs);

}  // namespace orthoplex
