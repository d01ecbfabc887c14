#pragma once

#include <cmath>
#include <vector>

namespace orthoplex {

enum class Region { Interior, Boundary };

/// Constraint pair (m, rho): specific magnetization and particle number.
/// Interior means |m| < rho, boundary |m| = rho (within a relative tolerance,
/// since exact float equality on |m| = rho is meaningless).
struct ModelPoint {
    double m = 0.0;
    double rho = 1.0;
    Region region = Region::Interior;
};

inline constexpr double kBoundaryTol = 1e-12;

/// Classifies (m, rho); throws std::invalid_argument if rho <= 0 or |m| > rho.
ModelPoint classify_point(double m, double rho);

/// Shorthand for a point that must land in the interior.
ModelPoint interior_point(double m, double rho);

/// Natural log of a strictly positive quantity.
struct LogReal {
    double log_value = 0.0;
    double value() const { return std::exp(log_value); }
};

/// Extensive totals M = n m, N = n rho at system size n.
struct MacroTotals {
    double M = 0.0;
    double N = 0.0;
    int n = 0;
};

MacroTotals totals_for(int n, const ModelPoint& point);

/// Evaluator for the microcanonical partition function Z_n at fixed n.
/// Caches the log-gamma table so repeated evaluations (quadrature, sampling
/// weights) cost O(n) arithmetic.  Internals run in long double so the
/// relative error stays near 1e-15 even at n = 10^4.
class PartitionEvaluator {
public:
    explicit PartitionEvaluator(int n);  // throws for n < 2

    int size() const { return n_; }

    /// ln Z_n(M, N) for interior totals (|M| < N, N > 0):
    /// Z = (1/2) sum_{k=1}^{n-1} C(n,k) X^{k-1}/(k-1)! Y^{n-k-1}/(n-k-1)!
    /// with X = (N+M)/2, Y = (N-M)/2.  The k-sum is accumulated in symmetric
    /// pairs so that Z(M, N) == Z(-M, N) holds bit-exactly.
    double log_interior(double M, double N) const;

    /// ln Z_n on the boundary |M| = N: Z = N^{n-1}/(n-1)!.
    double log_boundary(double N) const;

    /// Unnormalized log weight of the k-positive-signs summand, k in [1, n-1].
    double log_sign_count_term(int k, double M, double N) const;

private:
    int n_;
    std::vector<long double> lgam_;  // lgam_[i] = lgamma(i), i in [1, n+1]
    long double lg(int i) const { return lgam_[i - 1]; }
};

LogReal log_partition_interior(int n, const ModelPoint& point);
LogReal log_partition_boundary(int n, double N);

/// Dispatches on |M| vs N with the boundary tolerance.
LogReal log_partition_totals(int n, double M, double N);

/// Finite-volume specific entropy s_n = (1/n) ln Z_n(n m, n rho).
double entropy_n(int n, const ModelPoint& point);

struct LatticeSpec {
    double m_lo, m_hi;
    int m_count;
    double rho_lo, rho_hi;
    int rho_count;
};

struct ConcavityViolation {
    double m1, rho1, m2, rho2;
    double deficit;
};

struct ConcavityReport {
    long pairs_checked = 0;
    std::vector<ConcavityViolation> violations;
};

/// Midpoint-concavity spot check of s_n over the lattice: for each neighbor
/// pair (p, q) whose members and midpoint all lie in the interior,
/// s_n((p+q)/2) >= (s_n(p) + s_n(q))/2 - tol must hold.
ConcavityReport check_concavity_grid(int n, const LatticeSpec& lattice, double tol = 1e-9);

}  // namespace orthoplex
