#include <doctest.h>

#include <cmath>
#include <vector>

#include "quantcast/arima/arima.hpp"
#include "quantcast/error.hpp"
#include "quantcast/garch/arima_garch.hpp"
#include "quantcast/garch/garch.hpp"
#include "quantcast/series/transforms.hpp"
#include "support/simulate.hpp"

using namespace quantcast;
using namespace quantcast::garch;
using quantcast::testing::gaussian_noise;
using quantcast::testing::random_walk;
using quantcast::testing::simulate_arma;
using quantcast::testing::simulate_garch;

namespace {

/// x_t = c + phi x_{t-1} + eps_t with GARCH(1,1) eps.
std::vector<double> ar1_garch(std::size_t n, double c, double phi, std::uint64_t seed) {
    const auto eps = simulate_garch(n, 0.1, 0.1, 0.8, seed);
    std::vector<double> x(n);
    double prev = c / (1.0 - phi);
    for (std::size_t t = 0; t < n; ++t) {
        x[t] = c + phi * prev + eps[t];
        prev = x[t];
    }
    return x;
}

}  // namespace

TEST_CASE("variance recursion arithmetic") {
    const GarchParams g{0.1, 0.2, 0.7};
    CHECK(next_variance(g, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(next_variance(g, 0.0, 2.0) == doctest::Approx(1.5));
    CHECK(GarchParams{0.1, 0.05, 0.85}.unconditional_variance() == doctest::Approx(1.0));
    CHECK(g.admissible());
    CHECK_FALSE(GarchParams{0.1, 0.5, 0.5}.admissible());
    CHECK_FALSE(GarchParams{0.0, 0.1, 0.1}.admissible());
    CHECK_FALSE(GarchParams{0.1, -0.1, 0.5}.admissible());
}

TEST_CASE("forecast_variance") {
    GarchFit fit;
    fit.params = {0.3, 0.0, 0.0};
    fit.cond_variances = {5.0};
    CHECK(forecast_variance(fit, 10.0) == doctest::Approx(0.3));

    fit.params = {0.1, 0.2, 0.7};
    fit.cond_variances = {2.0};
    CHECK(forecast_variance(fit, 0.0) == doctest::Approx(1.5));

    // zero residuals: fixed point omega / (1 - beta)
    double v = 3.0;
    for (int i = 0; i < 500; ++i) {
        fit.cond_variances = {v};
        v = forecast_variance(fit, 0.0);
    }
    CHECK(v == doctest::Approx(0.1 / 0.3).epsilon(1e-12));
}

TEST_CASE("conditional variances start at the given value and stay positive") {
    const auto e = gaussian_noise(200, 1);
    const GarchParams g{0.05, 0.1, 0.85};
    const auto v = conditional_variances(e, g, sample_variance(e));
    REQUIRE(v.size() == e.size());
    CHECK(v[0] == doctest::Approx(sample_variance(e)));
    for (double x : v) CHECK(x > 0.0);
    CHECK(v[1] == doctest::Approx(next_variance(g, e[0], v[0])));
}

TEST_CASE("gaussian log-likelihood formula") {
    const std::vector<double> e{1.0, -2.0};
    const std::vector<double> v{1.0, 4.0};
    const double expected = -0.5 * (2.0 * std::log(2.0 * M_PI) + std::log(1.0) + std::log(4.0) + 1.0 + 1.0);
    CHECK(gaussian_log_likelihood(e, v) == doctest::Approx(expected));
}

TEST_CASE("reparameterisation always gives admissible parameters") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto u = gaussian_noise(3, seed, 5.0);
        const auto g = garch_from_unconstrained(u, 2.0);
        CHECK(g.admissible());
        const auto back = garch_to_unconstrained(g, 2.0);
        const auto again = garch_from_unconstrained(back, 2.0);
        CHECK(again.omega == doctest::Approx(g.omega));
        CHECK(again.gamma == doctest::Approx(g.gamma));
        CHECK(again.beta == doctest::Approx(g.beta));
    }
}

TEST_CASE("GARCH(1,1) parameter recovery") {
    const auto eps = simulate_garch(5000, 0.1, 0.1, 0.8, 42);
    const auto fit = fit_garch11(eps);
    CHECK(fit.params.admissible());
    CHECK(std::abs(fit.params.gamma - 0.1) <= 0.05);
    CHECK(std::abs(fit.params.beta - 0.8) <= 0.05);
    CHECK(fit.params.omega >= 0.05);
    CHECK(fit.params.omega <= 0.15);
    CHECK(fit.cond_variances.size() == eps.size());
    for (double v : fit.cond_variances) CHECK(v > 0.0);
    CHECK(fit.unconditional_variance == doctest::Approx(fit.params.unconditional_variance()));
    CHECK(fit.log_likelihood == doctest::Approx(gaussian_log_likelihood(eps, fit.cond_variances)));
}

TEST_CASE("GARCH fit rejects degenerate input") {
    CHECK_THROWS_AS(fit_garch11(gaussian_noise(20, 1)), InvalidArgument);
    CHECK_THROWS_AS(fit_garch11(std::vector<double>(100, 0.0)), InvalidArgument);
}

TEST_CASE("GARCH fit on scaled residuals is scale-equivariant") {
    auto eps = simulate_garch(3000, 0.1, 0.1, 0.8, 7);
    const auto a = fit_garch11(eps);
    for (auto& e : eps) e *= 100.0;
    const auto b = fit_garch11(eps);
    CHECK(b.params.omega == doctest::Approx(a.params.omega * 1e4).epsilon(1e-3));
    CHECK(b.params.gamma == doctest::Approx(a.params.gamma).epsilon(1e-3));
    CHECK(b.params.beta == doctest::Approx(a.params.beta).epsilon(1e-3));
}

TEST_CASE("joint fit on homoskedastic AR(1) stays near plain ARIMA") {
    const auto x = simulate_arma(3000, {0.6}, {}, 55, 1.0);
    const auto plain = arima::fit(x, {1, 0, 0});
    const auto joint = fit_arima_garch(x, arima::ArimaOrder{1, 0, 0});
    CHECK(std::abs(joint.phi[0] - plain.phi[0]) <= 0.02);
    CHECK(joint.garch.admissible());
}

TEST_CASE("joint likelihood never falls below the two-stage start") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto x = ar1_garch(2000, 0.05, 0.5, 900 + seed);
        const auto m = fit_arima_garch(x, arima::ArimaOrder{1, 0, 1});
        CHECK(m.log_likelihood >= m.two_stage_log_likelihood - 1e-8);
        CHECK(m.garch.admissible());
        for (double v : m.cond_variances) CHECK(v > 0.0);
        CHECK(m.aic == doctest::Approx(2.0 * (1 + 1 + 4) - 2.0 * m.log_likelihood));
        const auto w = series::difference(x, 0).values;
        CHECK(joint_log_likelihood(w, m.mean_equation(), m.garch) == doctest::Approx(m.log_likelihood).epsilon(1e-10));
    }
}

TEST_CASE("joint estimation beats two-stage on AR(1)-GARCH data") {
    int closer = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto x = ar1_garch(5000, 0.0, 0.5, 1300 + seed);
        const auto plain = arima::fit(x, {1, 0, 0});
        const auto joint = fit_arima_garch(x, plain);
        closer += std::abs(joint.phi[0] - 0.5) < std::abs(plain.phi[0] - 0.5);
    }
    CHECK(closer >= 12);
}

TEST_CASE("frozen GARCH reduces to plain ARIMA") {
    const auto x = random_walk(400, 8, 100.0);
    ArimaGarchOptions frozen;
    frozen.freeze_homoskedastic = true;

    const auto drift = fit_arima_garch(x, arima::ArimaOrder{0, 1, 0}, frozen);
    const auto w = series::difference(x, 1).values;
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(w.size());
    CHECK(drift.alpha == doctest::Approx(mean).epsilon(1e-6));

    const auto plain = arima::fit(x, {1, 1, 1});
    const auto joint = fit_arima_garch(x, plain, frozen);
    CHECK(joint.homoskedastic);
    CHECK(joint.garch.gamma == 0.0);
    CHECK(joint.garch.beta == 0.0);
    CHECK(std::abs(joint.phi[0] - plain.phi[0]) < 1e-3);
    CHECK(std::abs(joint.theta[0] - plain.theta[0]) < 1e-3);
    const auto f = forecast_one_hybrid(joint, x);
    CHECK(f.price == doctest::Approx(arima::forecast_one(plain, x)).epsilon(1e-5));
    CHECK(f.variance == doctest::Approx(joint.garch.omega));
    CHECK(joint.aic == doctest::Approx(2.0 * 4 - 2.0 * joint.log_likelihood));
}

TEST_CASE("hybrid forecast reduces exactly with identical mean parameters") {
    const auto x = random_walk(300, 12, 50.0);
    const auto plain = arima::fit(x, {2, 1, 0});
    ArimaGarchModel m;
    m.order = plain.order;
    m.phi = plain.phi;
    m.theta = plain.theta;
    m.alpha = plain.alpha;
    m.garch = {plain.sigma2, 0.0, 0.0};
    m.homoskedastic = true;
    CHECK(forecast_one_hybrid(m, x).price == doctest::Approx(arima::forecast_one(plain, x)).epsilon(1e-14));
}

TEST_CASE("hybrid forecast is shift-equivariant with d = 1") {
    auto x = ar1_garch(600, 0.0, 0.3, 77);
    for (auto& v : x) v += 200.0;
    std::vector<double> levels(x.size());
    levels[0] = 100.0;
    for (std::size_t i = 1; i < x.size(); ++i) levels[i] = levels[i - 1] + 0.01 * x[i];
    const auto m = fit_arima_garch(levels, arima::ArimaOrder{1, 1, 0});
    const auto a = forecast_one_hybrid(m, levels);
    for (auto& v : levels) v += 11.0;
    const auto b = forecast_one_hybrid(m, levels);
    CHECK(std::abs(b.price - (a.price + 11.0)) < 1e-8);
    CHECK(b.variance == doctest::Approx(a.variance).epsilon(1e-9));
}
