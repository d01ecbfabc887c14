#include "orthoplex/core_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace orthoplex {

ModelPoint classify_point(double m, double rho) {
    if (!(rho > 0.0) || !std::isfinite(m) || !std::isfinite(rho))
        throw std::invalid_argument("ModelPoint: rho must be positive and finite");
    const double am = std::abs(m);
    if (am > rho) throw std::invalid_argument("ModelPoint: |m| <= rho required");
    const Region region = (am >= rho * (1.0 - kBoundaryTol)) ? Region::Boundary : Region::Interior;
    return {m, rho, region};
}

ModelPoint interior_point(double m, double rho) {
    ModelPoint p = classify_point(m, rho);
    if (p.region != Region::Interior)
        throw std::invalid_argument("ModelPoint: interior point required, got |m| = rho");
    return p;
}

MacroTotals totals_for(int n, const ModelPoint& point) {
    return {n * point.m, n * point.rho, n};
}

PartitionEvaluator::PartitionEvaluator(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("PartitionEvaluator: n >= 2 required");
    lgam_.resize(n + 1);
    for (int i = 1; i <= n + 1; ++i) lgam_[i - 1] = lgammal(static_cast<long double>(i));
}

double PartitionEvaluator::log_interior(double M, double N) const {
    const long double X = (static_cast<long double>(N) + M) / 2.0L;
    const long double Y = (static_cast<long double>(N) - M) / 2.0L;
    if (!(X > 0.0L) || !(Y > 0.0L))
        throw std::invalid_argument("log_interior: totals must satisfy |M| < N, N > 0");
    const long double lx = logl(X), ly = logl(Y);
    const int n = n_;
    const long double lgn1 = lg(n + 1);

    std::vector<long double> t(n - 1);
    long double tmax = -std::numeric_limits<long double>::infinity();
    for (int k = 1; k <= n - 1; ++k) {
        long double v = lgn1 - lg(k + 1) - lg(n - k + 1) - lg(k) - lg(n - k);
        if (k > 1) v += (k - 1) * lx;
        if (n - k > 1) v += (n - k - 1) * ly;
        t[k - 1] = v;
        if (v > tmax) tmax = v;
    }
    // Symmetric pairing keeps the m -> -m symmetry bit-exact.
    long double acc = 0.0L;
    for (int k = 1; 2 * k < n; ++k) acc += expl(t[k - 1] - tmax) + expl(t[n - k - 1] - tmax);
    if (n % 2 == 0) acc += expl(t[n / 2 - 1] - tmax);
    const long double result = tmax + logl(acc) + logl(0.5L);
    return static_cast<double>(result);
}

double PartitionEvaluator::log_boundary(double N) const {
    if (!(N > 0.0)) throw std::invalid_argument("log_boundary: N > 0 required");
    return static_cast<double>((n_ - 1) * logl(static_cast<long double>(N)) - lg(n_));
}

double PartitionEvaluator::log_sign_count_term(int k, double M, double N) const {
    if (k < 1 || k > n_ - 1) throw std::invalid_argument("log_sign_count_term: k out of range");
    const long double X = (static_cast<long double>(N) + M) / 2.0L;
    const long double Y = (static_cast<long double>(N) - M) / 2.0L;
    const int n = n_;
    long double v = lg(n + 1) - lg(k + 1) - lg(n - k + 1) - lg(k) - lg(n - k);
    if (k > 1) v += (k - 1) * logl(X);
    if (n - k > 1) v += (n - k - 1) * logl(Y);
    return static_cast<double>(v);
}

LogReal log_partition_interior(int n, const ModelPoint& point) {
    if (point.region != Region::Interior)
        throw std::invalid_argument("log_partition_interior: interior point required");
    const PartitionEvaluator pe(n);
    return {pe.log_interior(n * point.m, n * point.rho)};
}

LogReal log_partition_boundary(int n, double N) {
    const PartitionEvaluator pe(n);
    return {pe.log_boundary(N)};
}

LogReal log_partition_totals(int n, double M, double N) {
    const PartitionEvaluator pe(n);
    if (!(N > 0.0)) throw std::invalid_argument("log_partition_totals: N > 0 required");
    if (std::abs(M) > N) throw std::invalid_argument("log_partition_totals: |M| <= N required");
    if (std::abs(M) >= N * (1.0 - kBoundaryTol)) return {pe.log_boundary(N)};
    return {pe.log_interior(M, N)};
}

double entropy_n(int n, const ModelPoint& point) {
    const PartitionEvaluator pe(n);
    if (point.region == Region::Boundary) return pe.log_boundary(n * point.rho) / n;
    return pe.log_interior(n * point.m, n * point.rho) / n;
}

ConcavityReport check_concavity_grid(int n, const LatticeSpec& lattice, double tol) {
    if (lattice.m_count < 2 || lattice.rho_count < 2)
        throw std::invalid_argument("check_concavity_grid: need at least a 2x2 lattice");
    const PartitionEvaluator pe(n);

    auto grid_m = [&](int i) {
        return lattice.m_lo + (lattice.m_hi - lattice.m_lo) * i / (lattice.m_count - 1);
    };
    auto grid_rho = [&](int j) {
        return lattice.rho_lo + (lattice.rho_hi - lattice.rho_lo) * j / (lattice.rho_count - 1);
    };
    auto is_interior = [](double m, double rho) {
        return rho > 0.0 && std::abs(m) < rho * (1.0 - kBoundaryTol);
    };
    auto s = [&](double m, double rho) { return pe.log_interior(n * m, n * rho) / n; };

    ConcavityReport report;
    const int dm[4] = {1, 0, 1, 1};
    const int dr[4] = {0, 1, 1, -1};
    for (int i = 0; i < lattice.m_count; ++i) {
        for (int j = 0; j < lattice.rho_count; ++j) {
            for (int d = 0; d < 4; ++d) {
                const int i2 = i + dm[d], j2 = j + dr[d];
                if (i2 < 0 || i2 >= lattice.m_count || j2 < 0 || j2 >= lattice.rho_count) continue;
                const double m1 = grid_m(i), r1 = grid_rho(j);
                const double m2 = grid_m(i2), r2 = grid_rho(j2);
                const double mm = 0.5 * (m1 + m2), rm = 0.5 * (r1 + r2);
                if (!is_interior(m1, r1) || !is_interior(m2, r2) || !is_interior(mm, rm)) continue;
                ++report.pairs_checked;
                const double deficit = 0.5 * (s(m1, r1) + s(m2, r2)) - s(mm, rm);
                if (deficit > tol) report.violations.push_back({m1, r1, m2, r2, deficit});
            }
        }
    }
    return report;
}

}  // namespace orthoplex
