#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "orthoplex/expression.hpp"
#include "orthoplex/thermo.hpp"

namespace orthoplex {

enum class InteractionFamily { Zero, Linear, CurieWeiss, Polynomial, Expression };

/// An interaction function g on [-1, 1].  The closed families carry exact
/// derivatives of any order; the expression family differentiates by
/// Richardson-extrapolated central differences.
class Interaction {
public:
    static Interaction zero();
    static Interaction linear(double slope);                    // g(m) = slope * m
    static Interaction curie_weiss(double beta_j, double h);    // g(m) = (betaJ/2) m^2 + h m
    static Interaction polynomial(std::vector<double> coeffs);  // ascending degree
    static Interaction expression(ExprPtr ast);

    InteractionFamily family() const { return family_; }
    double operator()(double m) const;
    double derivative(double m, int order) const;
    int derivative_order_supported() const;
    bool analytic_derivatives() const { return family_ != InteractionFamily::Expression; }
    bool is_even() const;
    std::string describe() const;

    double param_a() const { return a_; }  // slope / betaJ
    double param_b() const { return b_; }  // h
    const std::vector<double>& coefficients() const { return coeffs_; }
    const ExprPtr& ast() const { return ast_; }

private:
    Interaction() = default;
    InteractionFamily family_ = InteractionFamily::Zero;
    double a_ = 0.0, b_ = 0.0;
    std::vector<double> coeffs_;
    ExprPtr ast_;
};

/// Parses "zero", "linear:beta=..", "cw:betaJ=..,h=..", "poly:c0,c1,..",
/// "expr:<formula in m>".  Expression interactions are probed on a 65-point
/// grid over [-1, 1] and rejected on any domain violation.
Interaction parse_interaction(const std::string& text);

struct boundary_maximum_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct classification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// psi^g(m) = g(m) + s(m, 1), with the continuous extension at m = +-1.
double psi(const Interaction& g, double m);

/// d^order/dm^order psi^g at an interior m.  The entropy part comes from
/// Taylor-series arithmetic (exact to roundoff) for every family.
double psi_derivative(const Interaction& g, double m, int order);

/// All interior global maximizers of psi^g, sorted ascending.  Grid scan over
/// 4097 points, golden-section refinement per bracket, Newton polish on the
/// stationarity condition, tie filtering at tol_value, deduplication at
/// tol_sep.  For even g the returned set is exactly symmetric (a lone central
/// maximizer snaps to m = 0).  Throws boundary_maximum_error if the maximum
/// is attained at +-1.
std::vector<double> find_global_maxima(const Interaction& g, double tol_value = 1e-9,
                                       double tol_sep = 1e-6);

inline constexpr int kMaxType = 4;

struct TypeClassification {
    int k = 0;
    double deriv_2k = 0.0;  // d^{2k} psi at the maximizer, negative
    double zero_tol = 0.0;  // tolerance actually applied
};

/// Smallest k with psi derivatives vanishing through order 2k-1 and
/// d^{2k} psi < 0 at m_star.  zero_tol <= 0 selects the family default
/// (1e-10 analytic, max(1e-6, 1e-4 |d^{2k} psi|) for expressions).
TypeClassification classify_type(const Interaction& g, double m_star, double zero_tol = 0.0);

/// A classified global maximizer with its Laplace weight.
struct MaximizerRecord {
    double m_star = 0.0;
    int type_k = 0;
    double deriv_2k = 0.0;
    double weight_w = 0.0;
};

/// The limit weight W^g(m*) = C^k(m*) / |d^{2k} psi(m*)|^{1/(2k)} in closed
/// form; record must carry m_star, type_k and deriv_2k.
double weight_w(const Interaction& g, const MaximizerRecord& record);

struct MixtureComponent {
    double weight = 0.0;
    FieldParams params;
    double m_star = 0.0;
};

/// The limiting Gibbs state: maximal-type maximizers with normalized weights,
/// mapped to grand-canonical parameters.
struct MixtureState {
    std::vector<MixtureComponent> components;
    int maximal_type = 0;
};

MixtureState limiting_mixture(const Interaction& g);

struct AnalysisResult {
    std::vector<MaximizerRecord> maximizers;  // every global maximizer, classified
    int maximal_type = 0;
    MixtureState mixture;
};

AnalysisResult analyze_interaction(const Interaction& g);

/// Rate function I^g(m) = sup psi^g - psi^g(m) on [-1, 1], +infinity outside.
double rate_function(const Interaction& g, double m);

/// Same with the supremum precomputed once, for grid evaluation.
class RateFunction {
public:
    explicit RateFunction(const Interaction& g);
    double operator()(double m) const;
    double sup_psi() const { return sup_; }

private:
    Interaction g_;
    double sup_;
};

}  // namespace orthoplex
