#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orthoplex/core_model.hpp"
#include "orthoplex/quadrature.hpp"
#include "orthoplex/thermo.hpp"

using namespace orthoplex;

namespace {
double rel_err(double got, double expected) {
    return std::abs(got - expected) / std::max(1.0, std::abs(expected));
}
}  // namespace

TEST_CASE("point classification") {
    CHECK(classify_point(0.3, 1.0).region == Region::Interior);
    CHECK(classify_point(1.0, 1.0).region == Region::Boundary);
    CHECK(classify_point(-1.0, 1.0).region == Region::Boundary);
    // within the relative tolerance of the boundary
    CHECK(classify_point(1.0 - 1e-13, 1.0).region == Region::Boundary);
    CHECK_THROWS_AS(classify_point(1.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(classify_point(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(classify_point(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(interior_point(1.0, 1.0), std::invalid_argument);

    const auto totals = totals_for(4, interior_point(0.25, 1.5));
    CHECK(totals.M == doctest::Approx(1.0));
    CHECK(totals.N == doctest::Approx(6.0));
}

TEST_CASE("exact small partition values") {
    const auto p = interior_point(0.0, 1.0);
    CHECK(std::abs(log_partition_interior(2, p).log_value) < 1e-14);
    CHECK(rel_err(log_partition_interior(3, p).log_value, std::log(4.5)) < 1e-14);
    CHECK(rel_err(log_partition_interior(4, p).log_value, std::log(20.0)) < 1e-14);

    // boundary branch: Z = N^{n-1} / (n-1)!
    CHECK(rel_err(log_partition_boundary(2, 2.0).log_value, std::log(2.0)) < 1e-14);
    CHECK(rel_err(log_partition_boundary(3, 3.0).log_value, std::log(4.5)) < 1e-14);
    CHECK(rel_err(log_partition_boundary(3, 1.0).log_value, std::log(0.5)) < 1e-14);

    CHECK_THROWS_AS(log_partition_interior(1, p), std::invalid_argument);
    CHECK_THROWS_AS(log_partition_boundary(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(log_partition_boundary(3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(log_partition_interior(5, classify_point(1.0, 1.0)), std::invalid_argument);
}

TEST_CASE("entropy dispatch") {
    CHECK(entropy_n(3, interior_point(0.0, 1.0)) == doctest::Approx(std::log(4.5) / 3).epsilon(1e-14));
    CHECK(std::abs(entropy_n(2, interior_point(0.0, 1.0))) < 1e-14);
    // boundary branch coincides with the interior value at n = 3 (Z_3 depends
    // on X + Y only)
    CHECK(entropy_n(3, classify_point(1.0, 1.0)) ==
          doctest::Approx(std::log(4.5) / 3).epsilon(1e-14));
}

TEST_CASE("high-precision oracle values") {
    // Frozen from a 60-digit evaluation of the k-sum (mpmath); inputs are the
    // same binary64 values the evaluator receives.
    struct Case {
        int n;
        double m, rho, expected;
    };
    const Case cases[] = {
        {100, 0.3, 1.0, 160.2702008679908185116},
        {1000, 0.3, 1.0, 1660.836888303518852037},
        {10000, 0.3, 1.0, 16687.16190121886049488},
        {10000, -0.7, 1.2, 17757.41440471760863935},
        {50, 0.0, 1.0, 78.5465663916304680849},
    };
    for (const auto& c : cases) {
        const double got = log_partition_interior(c.n, interior_point(c.m, c.rho)).log_value;
        CHECK(std::abs(got - c.expected) < 1e-12 * std::abs(c.expected));
    }
}

TEST_CASE("symmetry is bit-exact") {
    for (int n : {2, 3, 7, 50, 321}) {
        for (double m : {0.1, 0.5, 0.77, 0.999}) {
            const double a = log_partition_interior(n, interior_point(m, 1.0)).log_value;
            const double b = log_partition_interior(n, interior_point(-m, 1.0)).log_value;
            CHECK(a == b);
        }
    }
}

TEST_CASE("homogeneity Z_n(lambda M, lambda N) = lambda^{n-2} Z_n(M, N)") {
    for (int n : {2, 3, 5, 17, 64}) {
        const PartitionEvaluator pe(n);
        for (double lambda : {0.25, 3.0, 17.5}) {
            const double base = pe.log_interior(0.4 * n, 1.1 * n);
            const double scaled = pe.log_interior(lambda * 0.4 * n, lambda * 1.1 * n);
            const double expected = base + (n - 2) * std::log(lambda);
            CHECK(std::abs(scaled - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("beta-function identity: integral of Z_n(m, 1) over [-1, 1]") {
    for (int n = 3; n <= 15; ++n) {
        const PartitionEvaluator pe(n);
        auto f = [&](double m) { return std::exp(pe.log_interior(m, 1.0)); };
        const double integral = integrate_adaptive(f, -1.0, 1.0, 1e-16, 1e-12);
        double expected = std::pow(2.0, n) - 2.0;
        for (int i = 2; i < n; ++i) expected /= i;
        CHECK(std::abs(integral - expected) < 1e-8 * expected);
    }
}

TEST_CASE("entropy bounds from relative entropy positivity and the trivial term") {
    for (int n : {5, 10, 50, 200}) {
        for (double m : {-0.6, -0.2, 0.0, 0.3, 0.7}) {
            for (double rho : {0.8, 1.0, 1.4}) {
                const auto p = interior_point(m, rho);
                const double sn = entropy_n(n, p);
                const auto matched = ensemble_map(p);
                // (n/(n-2)) s_n <= beta m + mu rho + f at the matched fields
                const double upper =
                    matched.beta * m + matched.mu * rho + grand_entropy(matched);
                CHECK(n / (n - 2.0) * sn <= upper + 1e-12);
                // and at a mismatched field pair
                CHECK(n / (n - 2.0) * sn <= 0.1 * m + 2.0 * rho + grand_entropy(0.1, 2.0) + 1e-12);
                // trivial lower bound from the k = n-1 summand
                const double lower = std::log(0.5) / n + (n - 2.0) / n * std::log((rho + m) / 2) +
                                     ((n - 1.0) * std::log(n) - std::lgamma(n - 1.0)) / n;
                CHECK(sn >= lower - 1e-12);
            }
        }
    }
}

TEST_CASE("midpoint concavity on lattices") {
    const LatticeSpec lattice{-0.8, 0.8, 21, 0.5, 1.5, 21};
    for (int n : {2, 10, 50}) {
        const auto report = check_concavity_grid(n, lattice, 1e-9);
        CHECK(report.pairs_checked > 500);
        CHECK(report.violations.empty());
    }
}
