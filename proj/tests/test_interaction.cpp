#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "orthoplex/bessel.hpp"
#include "orthoplex/interaction.hpp"
#include "orthoplex/mixture.hpp"
#include "orthoplex/quadrature.hpp"
#include "orthoplex/rng.hpp"
#include "test_stats.hpp"

using namespace orthoplex;

namespace {

// Closed-form Curie-Weiss maximizer: sqrt(1 - m*^2) = (sqrt(4/(bJ) + 1) - 1)/2.
double cw_maximizer(double beta_j) {
    const double w = 0.5 * (std::sqrt(4.0 / beta_j + 1.0) - 1.0);
    return std::sqrt(1.0 - w * w);
}

}  // namespace

TEST_CASE("psi values") {
    const auto gz = Interaction::zero();
    CHECK(psi(gz, 0.0) == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-15));
    CHECK(psi(gz, 1.0) == doctest::Approx(1.0));
    CHECK(psi(gz, -1.0) == doctest::Approx(1.0));
    CHECK(psi(Interaction::curie_weiss(1.0, 0.0), 0.0) ==
          doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(psi(gz, 1.5), std::invalid_argument);
}

TEST_CASE("global maximizers") {
    CHECK(find_global_maxima(Interaction::zero()) == std::vector<double>{0.0});
    CHECK(find_global_maxima(Interaction::curie_weiss(0.2, 0.0)) == std::vector<double>{0.0});
    CHECK(find_global_maxima(Interaction::curie_weiss(0.4, 0.0)) == std::vector<double>{0.0});

    for (double beta_j : {0.75, 1.0, 2.0}) {
        const auto maxima = find_global_maxima(Interaction::curie_weiss(beta_j, 0.0));
        REQUIRE(maxima.size() == 2);
        const double expected = cw_maximizer(beta_j);
        CHECK(maxima[0] == doctest::Approx(-expected).epsilon(1e-8));
        CHECK(maxima[1] == doctest::Approx(expected).epsilon(1e-8));
        CHECK(maxima[0] == -maxima[1]);  // even interaction: exactly symmetric
    }

    const auto up = find_global_maxima(Interaction::curie_weiss(1.0, 0.1));
    REQUIRE(up.size() == 1);
    CHECK(up[0] > 0.0);
    CHECK(up[0] < 1.0);
    const auto down = find_global_maxima(Interaction::curie_weiss(1.0, -0.1));
    REQUIRE(down.size() == 1);
    CHECK(down[0] == doctest::Approx(-up[0]).epsilon(1e-9));

    // non-finite interaction values surface as errors
    CHECK_THROWS_AS(find_global_maxima(Interaction::polynomial({0.0, 0.0, 1e308, 0.0, 1e308})),
                    std::runtime_error);
}

TEST_CASE("type classification") {
    auto t04 = classify_type(Interaction::curie_weiss(0.4, 0.0), 0.0);
    CHECK(t04.k == 1);
    CHECK(t04.deriv_2k == doctest::Approx(-0.1).epsilon(1e-12));

    auto t05 = classify_type(Interaction::curie_weiss(0.5, 0.0), 0.0);
    CHECK(t05.k == 2);
    CHECK(t05.deriv_2k == doctest::Approx(-2.25).epsilon(1e-9));

    auto tz = classify_type(Interaction::zero(), 0.0);
    CHECK(tz.k == 1);
    CHECK(tz.deriv_2k == doctest::Approx(-0.5).epsilon(1e-14));

    for (double slope : {0.5, 1.0, -0.8}) {
        const auto g = Interaction::linear(slope);
        const auto maxima = find_global_maxima(g);
        REQUIRE(maxima.size() == 1);
        const auto t = classify_type(g, maxima[0]);
        CHECK(t.k == 1);
        CHECK(t.deriv_2k < 0.0);
    }

    // degenerate flatness beyond order 8: the entropy Taylor coefficients
    // cancel through m^8, leaving a -m^10 well of type 5 > k_max
    const auto flat = Interaction::polynomial(
        {0.0, 0.0, 0.25, 0.0, 3.0 / 32, 0.0, 5.0 / 96, 0.0, 35.0 / 1024, 0.0, -1.0});
    CHECK_THROWS_AS(classify_type(flat, 0.0), classification_error);

    CHECK_THROWS_AS(classify_type(Interaction::zero(), 1.0), std::invalid_argument);
}

TEST_CASE("classification re-verified with independent finite differences") {
    struct Case {
        Interaction g;
        double m_star;
        int k;
    };
    const Case cases[] = {
        {Interaction::curie_weiss(1.0, 0.0), cw_maximizer(1.0), 1},
        {Interaction::curie_weiss(0.5, 0.0), 0.0, 2},
        {Interaction::zero(), 0.0, 1},
    };
    for (const auto& c : cases) {
        const auto t = classify_type(c.g, c.m_star);
        REQUIRE(t.k == c.k);
        for (double h : {0.04, 0.02}) {
            auto f = [&](double m) { return psi(c.g, m); };
            for (int j = 1; j < 2 * c.k; ++j)
                CHECK(std::abs(test_stats::fd_derivative(f, c.m_star, j, h)) < 1e-3);
            const double d2k = test_stats::fd_derivative(f, c.m_star, 2 * c.k, h);
            CHECK(d2k < 0.0);
            CHECK(d2k == doctest::Approx(t.deriv_2k).epsilon(5e-3));
        }
    }
}

TEST_CASE("expression-family classification via finite differences") {
    const auto g = parse_interaction("expr:0.5*m^2");
    const auto maxima = find_global_maxima(g);
    REQUIRE(maxima.size() == 2);
    CHECK(maxima[1] == doctest::Approx(cw_maximizer(1.0)).epsilon(1e-6));
    const auto t = classify_type(g, maxima[1]);
    CHECK(t.k == 1);
    const auto exact = classify_type(Interaction::curie_weiss(1.0, 0.0), cw_maximizer(1.0));
    CHECK(t.deriv_2k == doctest::Approx(exact.deriv_2k).epsilon(1e-6));
}

TEST_CASE("Laplace weight closed form") {
    // k = 1 tail factor: 2 Gamma(3/2) sqrt(2!) = sqrt(2 pi)
    CHECK(2.0 * std::tgamma(1.5) * std::sqrt(2.0) ==
          doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));

    // direct assembly at m* = 0 for g = 0: C^1(0) = (2 pi)^{3/2} / (2 e)
    const auto gz = Interaction::zero();
    const auto tz = classify_type(gz, 0.0);
    MaximizerRecord rz{0.0, tz.k, tz.deriv_2k, 0.0};
    const double w = weight_w(gz, rz);
    const double c1 = std::pow(2.0 * std::numbers::pi, 1.5) / (2.0 * std::numbers::e);
    CHECK(w == doctest::Approx(c1 * std::sqrt(2.0)).epsilon(1e-13));

    // independent oracle: assemble the 3D Gaussian product from finite
    // differences of the angular entropy and direct quadrature
    auto along_theta1 = [](double t) { return angular_entropy(0.0, 1.0, t, 0.0); };
    auto along_theta2 = [](double t) { return angular_entropy(0.0, 1.0, 0.0, t); };
    const double a1 = -test_stats::fd_derivative(along_theta1, 0.0, 2, 1e-3);
    const double a2 = -test_stats::fd_derivative(along_theta2, 0.0, 2, 1e-3);
    const double d2 = psi_derivative(gz, 0.0, 2);
    auto gauss = [](double a) {
        return integrate_adaptive([a](double x) { return std::exp(-0.5 * a * x * x); }, -30.0,
                                  30.0, 1e-14, 1e-12);
    };
    const double oracle = std::exp(-limiting_entropy_slice(0.0)) * gauss(a1) * gauss(a2) *
                          gauss(-d2);
    CHECK(w == doctest::Approx(oracle).epsilon(1e-6));

    // symmetric double well: equal weights at +-m*
    const auto g = Interaction::curie_weiss(1.0, 0.0);
    const auto ms = find_global_maxima(g);
    const auto tp = classify_type(g, ms[1]);
    const auto tn = classify_type(g, ms[0]);
    MaximizerRecord rp{ms[1], tp.k, tp.deriv_2k, 0.0};
    MaximizerRecord rn{ms[0], tn.k, tn.deriv_2k, 0.0};
    CHECK(weight_w(g, rp) == doctest::Approx(weight_w(g, rn)).epsilon(1e-12));

    MaximizerRecord bad{0.0, 0, -1.0, 0.0};
    CHECK_THROWS_AS(weight_w(gz, bad), std::invalid_argument);
}

TEST_CASE("limiting mixture") {
    const auto mix_cw = limiting_mixture(Interaction::curie_weiss(1.0, 0.0));
    REQUIRE(mix_cw.components.size() == 2);
    CHECK(mix_cw.maximal_type == 1);
    CHECK(mix_cw.components[0].weight == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mix_cw.components[1].weight == doctest::Approx(0.5).epsilon(1e-12));
    const double total = mix_cw.components[0].weight + mix_cw.components[1].weight;
    CHECK(std::abs(total - 1.0) < 1e-12);
    const auto expected = ensemble_map(interior_point(mix_cw.components[1].m_star, 1.0));
    CHECK(mix_cw.components[1].params.beta == doctest::Approx(expected.beta).epsilon(1e-12));
    CHECK(mix_cw.components[1].params.mu == doctest::Approx(expected.mu).epsilon(1e-12));

    const auto mix_zero = limiting_mixture(Interaction::zero());
    REQUIRE(mix_zero.components.size() == 1);
    CHECK(mix_zero.components[0].weight == doctest::Approx(1.0));
    CHECK(mix_zero.components[0].params.beta == doctest::Approx(0.0));
    CHECK(mix_zero.components[0].params.mu == doctest::Approx(1.0).epsilon(1e-12));

    // linear tilt: the unique maximizer mirrors the half-constrained argmax
    const auto mix_lin = limiting_mixture(Interaction::linear(1.0));
    REQUIRE(mix_lin.components.size() == 1);
    CHECK(mix_lin.components[0].m_star ==
          doctest::Approx(-half_constrained_entropy(1.0).argmax).epsilon(1e-9));

    // unclassifiable maximizer propagates
    const auto flat = Interaction::polynomial(
        {0.0, 0.0, 0.25, 0.0, 3.0 / 32, 0.0, 5.0 / 96, 0.0, 35.0 / 1024, 0.0, -1.0});
    CHECK_THROWS_AS(limiting_mixture(flat), classification_error);
}

TEST_CASE("even interactions give symmetric maximizers and weights") {
    const auto g = Interaction::polynomial({0.0, 0.0, 0.5, 0.0, 0.25});
    REQUIRE(g.is_even());
    const auto analysis = analyze_interaction(g);
    const auto& recs = analysis.maximizers;
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].m_star == -recs[1].m_star);
    CHECK(recs[0].weight_w == doctest::Approx(recs[1].weight_w).epsilon(1e-12));
    CHECK(analysis.mixture.components[0].weight == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rate function") {
    const auto gz = Interaction::zero();
    CHECK(rate_function(gz, 0.0) == doctest::Approx(0.0));
    CHECK(rate_function(gz, 0.5) ==
          doctest::Approx(std::log(2.0) - std::log(1.0 + std::sqrt(0.75))).epsilon(1e-12));
    CHECK(rate_function(gz, 1.5) == std::numeric_limits<double>::infinity());
    CHECK(rate_function(gz, -2.0) == std::numeric_limits<double>::infinity());

    // zero set of the rate function = maximizer set
    for (const auto& g :
         {Interaction::zero(), Interaction::curie_weiss(1.0, 0.0), Interaction::linear(0.6)}) {
        const auto maxima = find_global_maxima(g);
        const RateFunction rate(g);
        for (double m : maxima) CHECK(rate(m) < 1e-9);
        RngEngine rng({77, 0});
        int tested = 0;
        while (tested < 100) {
            const double m = 2.0 * rng.uniform01() - 1.0;
            bool near = false;
            for (double ms : maxima) near = near || std::abs(m - ms) < 0.05;
            if (near) continue;
            ++tested;
            CHECK(rate(m) > 0.0);
        }
    }
}

TEST_CASE("finite mixture masses and normalizer ladder") {
    const auto gz = Interaction::zero();
    const FiniteMixture fm(gz, 50);
    CHECK(std::exp(fm.log_mass(-1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fm.log_mass(0.2, 0.4) <= 0.0);

    double prev = std::numeric_limits<double>::infinity();
    for (int n : {100, 200, 400, 800}) {
        const FiniteMixture f(gz, n);
        const double diff = std::abs(f.log_normalizer() / n - (1.0 + std::log(2.0)));
        CHECK(diff < prev);
        prev = diff;
    }
    CHECK(prev < 6e-3);

    CHECK_THROWS_AS(FiniteMixture(gz, 1), std::invalid_argument);
}

TEST_CASE("mixture mass matches the rate function") {
    const auto gz = Interaction::zero();
    const double target = rate_function(gz, 0.4);
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {200, 400, 800}) {
        const FiniteMixture f(gz, n);
        const double err = std::abs(-f.log_mass(0.4, 0.6) / n - target);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("tilting consistency with the half-constrained entropy") {
    const double beta = 0.7;
    const auto g = Interaction::linear(beta);
    const double target = half_constrained_entropy(beta).value;
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {100, 200, 400}) {
        const FiniteMixture f(g, n);
        const double err = std::abs(f.log_normalizer() / n - target);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("limit state expectations by quadrature") {
    Observable phi1{1, std::numeric_limits<double>::infinity(),
                    [](std::span<const double> x) { return x[0]; }};
    Observable abs_phi1{1, std::numeric_limits<double>::infinity(),
                        [](std::span<const double> x) { return std::abs(x[0]); }};

    const auto mix_cw = limiting_mixture(Interaction::curie_weiss(1.0, 0.0));
    CHECK(limit_state_expectation(mix_cw, phi1) == doctest::Approx(0.0).epsilon(1e-10));

    MixtureState single;
    single.maximal_type = 1;
    single.components.push_back({1.0, ensemble_map(interior_point(0.6, 1.0)), 0.6});
    CHECK(limit_state_expectation(single, phi1) == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(limit_state_expectation(single, abs_phi1) == doctest::Approx(1.0).epsilon(1e-10));

    // two-coordinate product structure: E[phi_1 phi_2] = m*^2
    Observable pair{2, std::numeric_limits<double>::infinity(),
                    [](std::span<const double> x) { return x[0] * x[1]; }};
    CHECK(limit_state_expectation(single, pair) == doctest::Approx(0.36).epsilon(1e-9));

    Observable too_wide{5, 1.0, [](std::span<const double>) { return 1.0; }};
    CHECK_THROWS_AS(limit_state_expectation(single, too_wide), std::invalid_argument);
}
