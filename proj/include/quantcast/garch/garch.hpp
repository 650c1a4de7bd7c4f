#pragma once

#include <span>
#include <vector>

namespace quantcast::garch {

/// sigma_t^2 = omega + gamma * e_{t-1}^2 + beta * sigma_{t-1}^2
struct GarchParams {
    double omega = 0.0;
    double gamma = 0.0;
    double beta = 0.0;

    /// omega > 0, gamma >= 0, beta >= 0, gamma + beta < 1.
    bool admissible() const;
    double unconditional_variance() const { return omega / (1.0 - gamma - beta); }
};

inline double next_variance(const GarchParams& g, double prev_residual, double prev_variance) {
    return g.omega + g.gamma * prev_residual * prev_residual + g.beta * prev_variance;
}

/// Variance path with sigma_1^2 = initial_variance.
std::vector<double> conditional_variances(std::span<const double> residuals, const GarchParams& g,
                                          double initial_variance);

/// -1/2 sum [ln(2 pi) + ln sigma_t^2 + e_t^2 / sigma_t^2]
double gaussian_log_likelihood(std::span<const double> residuals, std::span<const double> variances);

/// Mean-centred variance with divisor n; the recursion's starting value.
double sample_variance(std::span<const double> residuals);

struct GarchFit {
    GarchParams params;
    std::vector<double> cond_variances;
    double log_likelihood = 0.0;
    double unconditional_variance = 0.0;
    int iterations = 0;
};

struct GarchFitOptions {
    int max_iterations = 5000;
    double f_tolerance = 1e-8;
};

/// Gaussian quasi-MLE of GARCH(1,1). Constraints hold by construction: omega = exp(u),
/// persistence gamma + beta and the gamma share of it are logistic. Throws InvalidArgument
/// for fewer than 30 or all-zero residuals and FitFailure on non-convergence.
GarchFit fit_garch11(std::span<const double> residuals, const GarchFitOptions& options = {});

/// One-step-ahead variance from the last residual and the last conditional variance.
double forecast_variance(const GarchFit& fit, double last_residual);

/// Mapping between unconstrained optimizer coordinates and admissible parameters, in
/// units where the residual variance is `scale2`.
GarchParams garch_from_unconstrained(std::span<const double> u, double scale2);
std::vector<double> garch_to_unconstrained(const GarchParams& g, double scale2);

}  // namespace quantcast::garch
