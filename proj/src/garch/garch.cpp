#include "quantcast/garch/garch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "quantcast/error.hpp"
#include "quantcast/optim/nelder_mead.hpp"

namespace quantcast::garch {

namespace {

constexpr double kMaxPersistence = 1.0 - 1e-9;

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace

bool GarchParams::admissible() const {
    return omega > 0.0 && gamma >= 0.0 && beta >= 0.0 && gamma + beta < 1.0 && std::isfinite(omega) &&
           std::isfinite(gamma) && std::isfinite(beta);
}

std::vector<double> conditional_variances(std::span<const double> residuals, const GarchParams& g,
                                          double initial_variance) {
    std::vector<double> var(residuals.size());
    if (var.empty()) return var;
    var[0] = initial_variance;
    for (std::size_t t = 1; t < var.size(); ++t) var[t] = next_variance(g, residuals[t - 1], var[t - 1]);
    return var;
}

double gaussian_log_likelihood(std::span<const double> residuals, std::span<const double> variances) {
    const double log2pi = std::log(2.0 * std::numbers::pi);
    double ll = 0.0;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        const double v = variances[t];
        if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
        ll += log2pi + std::log(v) + residuals[t] * residuals[t] / v;
    }
    return -0.5 * ll;
}

double sample_variance(std::span<const double> residuals) {
    if (residuals.empty()) return 0.0;
    const double n = static_cast<double>(residuals.size());
    const double mean = std::accumulate(residuals.begin(), residuals.end(), 0.0) / n;
    double ss = 0.0;
    for (double e : residuals) ss += (e - mean) * (e - mean);
    return ss / n;
}

GarchParams garch_from_unconstrained(std::span<const double> u, double scale2) {
    const double persistence = std::min(logistic(u[1]), kMaxPersistence);
    const double share = logistic(u[2]);
    return {std::exp(u[0]) * scale2, persistence * share, persistence * (1.0 - share)};
}

std::vector<double> garch_to_unconstrained(const GarchParams& g, double scale2) {
    const double persistence = std::clamp(g.gamma + g.beta, 1e-6, kMaxPersistence);
    const double share = std::clamp(g.gamma / std::max(g.gamma + g.beta, 1e-12), 1e-6, 1.0 - 1e-6);
    return {std::log(g.omega / scale2), logit(persistence), logit(share)};
}

GarchFit fit_garch11(std::span<const double> residuals, const GarchFitOptions& options) {
    if (residuals.size() < 30) throw InvalidArgument("fit_garch11: need at least 30 residuals");
    for (double e : residuals) {
        if (!std::isfinite(e)) throw InvalidArgument("fit_garch11: non-finite residual");
    }
    const double s2 = sample_variance(residuals);
    if (!(s2 > 0.0)) throw InvalidArgument("fit_garch11: residuals are degenerate (zero variance)");

    // Optimise on residuals scaled to unit variance; omega is rescaled on the way out.
    std::vector<double> z(residuals.size());
    const double s = std::sqrt(s2);
    std::transform(residuals.begin(), residuals.end(), z.begin(), [s](double e) { return e / s; });
    std::vector<double> var(z.size());
    const double n = static_cast<double>(z.size());

    const optim::Objective objective = [&](std::span<const double> u) {
        const GarchParams g = garch_from_unconstrained(u, 1.0);
        var[0] = 1.0;
        for (std::size_t t = 1; t < z.size(); ++t) var[t] = next_variance(g, z[t - 1], var[t - 1]);
        return -gaussian_log_likelihood(z, var) / n;
    };

    optim::NelderMeadOptions nm;
    nm.max_iterations = options.max_iterations;
    nm.f_tolerance = options.f_tolerance;
    nm.initial_step = {0.3};

    const GarchParams starts[] = {{0.1, 0.1, 0.8}, {0.05, 0.05, 0.9}, {0.5, 0.2, 0.3}};
    std::optional<optim::NelderMeadResult> best;
    int iterations = 0;
    for (const auto& start : starts) {
        auto result = optim::nelder_mead(objective, garch_to_unconstrained(start, 1.0), nm);
        iterations += result.iterations;
        if (!result.converged) continue;
        if (!best || result.value < best->value) best = std::move(result);
    }
    if (!best) throw FitFailure("fit_garch11: optimizer did not converge");

    GarchFit fit;
    fit.params = garch_from_unconstrained(best->x, s2);
    fit.cond_variances = conditional_variances(residuals, fit.params, s2);
    fit.log_likelihood = gaussian_log_likelihood(residuals, fit.cond_variances);
    fit.unconditional_variance = fit.params.unconditional_variance();
    fit.iterations = iterations;
    return fit;
}

double forecast_variance(const GarchFit& fit, double last_residual) {
    const double last_var = fit.cond_variances.empty() ? fit.unconditional_variance : fit.cond_variances.back();
    return next_variance(fit.params, last_residual, last_var);
}

}  // namespace quantcast::garch
