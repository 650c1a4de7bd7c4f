#include <doctest.h>

#include <cmath>
#include <limits>

#include "quantcast/optim/nelder_mead.hpp"

using namespace quantcast::optim;

TEST_CASE("nelder-mead finds a quadratic minimum") {
    const auto f = [](std::span<const double> x) { return (x[0] - 1.5) * (x[0] - 1.5) + 4.0 * (x[1] + 0.5) * (x[1] + 0.5); };
    const auto r = nelder_mead(f, {0.0, 0.0});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-3));
}

TEST_CASE("nelder-mead on Rosenbrock") {
    const auto f = [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    NelderMeadOptions opts;
    opts.max_iterations = 5000;
    opts.f_tolerance = 1e-14;
    opts.initial_step = {0.5};
    const auto r = nelder_mead(f, {-1.2, 1.0}, opts);
    CHECK(r.value < 1e-8);
    CHECK(std::abs(r.x[0] - 1.0) < 1e-3);
}

TEST_CASE("non-finite values act as barriers") {
    const auto f = [](std::span<const double> x) {
        if (x[0] < 0.2) return std::numeric_limits<double>::quiet_NaN();
        return (x[0] - 0.1) * (x[0] - 0.1);
    };
    const auto r = nelder_mead(f, {1.0});
    CHECK(r.x[0] >= 0.2);
    CHECK(r.x[0] == doctest::Approx(0.2).epsilon(1e-2));
}

TEST_CASE("iteration cap reports non-convergence") {
    const auto f = [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    NelderMeadOptions opts;
    opts.max_iterations = 5;
    const auto r = nelder_mead(f, {-1.2, 1.0}, opts);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations <= 5 * (opts.max_restarts + 1));
}
